#include "gcdlab/canonical.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcdlab {

namespace {

using Position = MultiIndex::Position;
using Exponent = MultiIndex::Exponent;

MultiIndex lowered(const MultiIndex& beta, Position j) { return beta.with(j, beta[j] - 1); }

void check_distinct(const std::vector<MultiIndex>& members) {
  std::set<MultiIndex> seen(members.begin(), members.end());
  if (seen.size() != members.size()) {
    throw std::logic_error("canonical reduction produced a repeated multi-index");
  }
}

std::vector<Position> support_of(const std::vector<MultiIndex>& members) {
  std::set<Position> s;
  for (const auto& m : members) {
    for (const auto& e : m.entries()) s.insert(e.first);
  }
  return {s.begin(), s.end()};
}

// One pass of Part 1 for a fixed j. Returns true if anything changed.
bool close_position(std::vector<MultiIndex>& members, Position j) {
  bool changed = false;
  for (;;) {
    Exponent level = 0;
    for (const auto& m : members) level = std::max(level, m[j]);
    if (level == 0) return changed;

    std::set<MultiIndex> present(members.begin(), members.end());
    std::vector<std::size_t> replace;
    bool level_kept = false;
    for (std::size_t k = 0; k < members.size(); ++k) {
      if (members[k][j] != level) continue;
      if (present.contains(lowered(members[k], j))) {
        level_kept = true;
      } else {
        replace.push_back(k);
      }
    }
    if (replace.empty()) return changed;
    for (auto k : replace) members[k] = lowered(members[k], j);
    changed = true;
    check_distinct(members);
    // Survivors at this level already have their parent in the set.
    if (level_kept) return changed;
  }
}

bool compact_position(std::vector<MultiIndex>& members, Position j) {
  std::map<MultiIndex, std::vector<std::size_t>> chains;
  for (std::size_t k = 0; k < members.size(); ++k) chains[members[k].with(j, 0)].push_back(k);
  bool changed = false;
  for (auto& [base, idx] : chains) {
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return members[a][j] < members[b][j]; });
    for (std::size_t rank = 0; rank < idx.size(); ++rank) {
      const auto e = static_cast<Exponent>(rank);
      if (members[idx[rank]][j] != e) {
        members[idx[rank]] = base.with(j, e);
        changed = true;
      }
    }
  }
  return changed;
}

}  // namespace

bool is_kappa_canonical(const IndexSet& B, std::size_t kappa) {
  const std::size_t N = B.size();
  std::set<MultiIndex> present(B.begin(), B.end());
  for (const auto& beta : B) {
    for (const auto& [pos, exp] : beta.entries()) {
      if (pos > kappa && pos <= N && !present.contains(lowered(beta, pos))) return false;
    }
  }
  return true;
}

bool has_maximal_closure(const IndexSet& B) {
  std::set<MultiIndex> present(B.begin(), B.end());
  for (auto j : B.support_union()) {
    Exponent level = 0;
    for (const auto& m : B) level = std::max(level, m[j]);
    for (const auto& m : B) {
      if (m[j] == level && !present.contains(lowered(m, j))) return false;
    }
  }
  return true;
}

IndexSet part1_reduce(const IndexSet& B) {
  std::vector<MultiIndex> members = B.members();
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto j : support_of(members)) changed |= close_position(members, j);
  }
  return IndexSet(std::move(members));
}

IndexSet part2_compactify(const IndexSet& B, std::size_t kappa) {
  if (kappa >= B.size()) {
    throw std::invalid_argument("part2_compactify: kappa = " + std::to_string(kappa) +
                                " must be smaller than N = " + std::to_string(B.size()));
  }
  std::vector<MultiIndex> members = B.members();
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto j : support_of(members)) {
      if (j > kappa) changed |= compact_position(members, j);
    }
    check_distinct(members);
  }
  return IndexSet(std::move(members));
}

CanonicalReduction canonical_reduce(const IndexSet& B, const WeightSequence& t) {
  const auto R = B.max_position();
  if (R > 0 && !t.is_decreasing(R)) {
    throw std::invalid_argument("canonical_reduce: weights must be nonincreasing on the support");
  }
  const std::size_t k = kappa(t);
  if (k >= B.size()) {
    throw std::invalid_argument("canonical_reduce: kappa(t) = " + std::to_string(k) +
                                " must be smaller than N = " + std::to_string(B.size()));
  }
  IndexSet closed = part1_reduce(B);
  IndexSet compact = part2_compactify(closed, k);
  return {std::move(compact), eta(t), k};
}

}  // namespace gcdlab
