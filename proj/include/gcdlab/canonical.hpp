#pragma once

#include <cstddef>

#include "gcdlab/gcdcore.hpp"
#include "gcdlab/weights.hpp"

namespace gcdlab {

/// True iff beta in B with beta_j >= 1 for some kappa < j <= N implies
/// beta - e_j in B.
bool is_kappa_canonical(const IndexSet& B, std::size_t kappa);

/// True iff every j-maximal member beta (beta_j equal to the largest j-exponent
/// in B) has beta - e_j in B, for every j in the support union.
bool has_maximal_closure(const IndexSet& B);

/// Part 1 of the reduction: lowers j-maximal members lacking their j-parent
/// until every j-maximal member has beta - e_j in the set. Positions are
/// processed in ascending order and the sweep is repeated until a full pass
/// makes no change. Member order is preserved.
IndexSet part1_reduce(const IndexSet& B);

/// Part 2: for every j > kappa in the support union, splits B into j-chains
/// (members differing only in coordinate j) and compacts each chain to the
/// exponents 0, 1, ..., #chain - 1. Repeated until stable.
/// Throws std::invalid_argument when kappa >= N.
IndexSet part2_compactify(const IndexSet& B, std::size_t kappa);

struct CanonicalReduction {
  IndexSet reduced;
  WeightSequence weights;  // eta(t)
  std::size_t kappa;       // kappa(t)
};

/// Both parts in sequence. Requires t nonincreasing on the support of B with
/// kappa(t) < N. The result is kappa(t)-canonical, has N members, touches at
/// most N-1 positions, and S(eta(t), B') >= S(t, B).
CanonicalReduction canonical_reduce(const IndexSet& B, const WeightSequence& t);

}  // namespace gcdlab
