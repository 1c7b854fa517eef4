#include "gcdlab/gcdcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "gcdlab/numeric.hpp"

namespace gcdlab {

IndexSet::IndexSet(std::vector<MultiIndex> members) : members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("index set must have at least one member");
  auto sorted = sorted_members();
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) {
    throw std::invalid_argument("index set members must be distinct; repeated " + dup->to_string());
  }
}

std::vector<MultiIndex::Position> IndexSet::support_union() const {
  std::vector<MultiIndex::Position> out;
  for (const auto& m : members_) {
    for (const auto& e : m.entries()) out.push_back(e.first);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MultiIndex::Position IndexSet::max_position() const {
  MultiIndex::Position r = 0;
  for (const auto& m : members_) r = std::max(r, m.max_position());
  return r;
}

bool IndexSet::contains(const MultiIndex& beta) const {
  return std::find(members_.begin(), members_.end(), beta) != members_.end();
}

std::vector<MultiIndex> IndexSet::sorted_members() const {
  auto out = members_;
  std::sort(out.begin(), out.end());
  return out;
}

IntegerSequence::IntegerSequence(std::vector<std::uint64_t> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("integer sequence is empty");
  if (values_.front() == 0) throw std::invalid_argument("integer sequence entries must be positive");
  for (std::size_t k = 1; k < values_.size(); ++k) {
    if (values_[k] <= values_[k - 1]) {
      throw std::invalid_argument("integer sequence must be strictly increasing at index " +
                                  std::to_string(k));
    }
  }
}

IntegerSequence IntegerSequence::from_unsorted(std::vector<std::uint64_t> values) {
  std::sort(values.begin(), values.end());
  return IntegerSequence(std::move(values));
}

IndexSet factorize_all(const IntegerSequence& seq, const PrimeTable& table) {
  std::vector<MultiIndex> members;
  members.reserve(seq.size());
  for (auto n : seq.values()) members.push_back(factorize(n, table));
  return IndexSet(std::move(members));
}

double gcd_sum(const IntegerSequence& seq, double alpha, bool normalized) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("gcd_sum: alpha must lie in (0,1]");
  const auto& n = seq.values();
  const std::size_t N = n.size();
  // Row k holds the off-diagonal terms l > k; the total is N + 2 * sum.
  std::vector<double> rows(N, 0.0);
  parallel_for(N, [&](std::size_t k) {
    CompensatedSum row;
    const double nk = static_cast<double>(n[k]);
    for (std::size_t l = k + 1; l < N; ++l) {
      const double g = static_cast<double>(std::gcd(n[k], n[l]));
      const double ratio = (g / nk) * (g / static_cast<double>(n[l]));
      row.add(alpha == 1.0 ? ratio : std::pow(ratio, alpha));
    }
    rows[k] = row.value();
  });
  const double total = static_cast<double>(N) + 2.0 * compensated_total(rows);
  return normalized ? total / static_cast<double>(N) : total;
}

double s_form(const WeightSequence& t, const IndexSet& B, bool normalized) {
  const std::size_t N = B.size();
  std::vector<double> rows(N, 0.0);
  parallel_for(N, [&](std::size_t k) {
    CompensatedSum row;
    for (std::size_t l = k + 1; l < N; ++l) row.add(weight_power(t, abs_diff(B[k], B[l])));
    rows[k] = row.value();
  });
  const double total = static_cast<double>(N) + 2.0 * compensated_total(rows);
  return normalized ? total / static_cast<double>(N) : total;
}

IntegerSequence extremal_squarefree(unsigned r) {
  if (r == 0) throw std::invalid_argument("extremal_squarefree: r must be positive");
  if (r >= 63) throw std::overflow_error("extremal_squarefree: 2^r does not fit 64 bits");
  const auto& table = PrimeTable::standard();
  std::vector<std::uint64_t> values;
  values.reserve(std::size_t{1} << r);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r); ++mask) {
    std::uint64_t n = 1;
    for (unsigned j = 0; j < r; ++j) {
      if ((mask >> j) & 1U) {
        if (__builtin_mul_overflow(n, table.prime(j + 1), &n)) {
          throw std::overflow_error("extremal_squarefree: product of the first " +
                                    std::to_string(r) + " primes exceeds 64 bits");
        }
      }
    }
    values.push_back(n);
  }
  return IntegerSequence::from_unsorted(std::move(values));
}

double squarefree_closed_form(unsigned r, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("squarefree_closed_form: alpha must lie in (0,1]");
  }
  const auto& table = PrimeTable::standard();
  double prod = std::ldexp(1.0, static_cast<int>(r));
  for (unsigned j = 1; j <= r; ++j) {
    prod *= 1.0 + std::pow(static_cast<double>(table.prime(j)), -alpha);
  }
  return prod;
}

IntegerSequence extremal_primes(std::size_t n) {
  if (n == 0) throw std::invalid_argument("extremal_primes: N must be positive");
  const auto& table = PrimeTable::standard();
  std::vector<std::uint64_t> values(n);
  for (std::size_t j = 1; j <= n; ++j) values[j - 1] = table.prime(j);
  return IntegerSequence(std::move(values));
}

IntegerSequence first_integers(std::size_t n) {
  if (n == 0) throw std::invalid_argument("first_integers: N must be positive");
  std::vector<std::uint64_t> values(n);
  std::iota(values.begin(), values.end(), std::uint64_t{1});
  return IntegerSequence(std::move(values));
}

}  // namespace gcdlab
