#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gcdlab/multiindex.hpp"

namespace gcdlab {

/// The doubling map: 2x below 1/2, identity on [1/2, 1).
double eta(double x);

/// A weight sequence t = (t_j), j >= 1, with every t_j in (0, 1). Either an
/// explicit finite list or the power law t_j = p_j^{-alpha}, optionally with
/// the doubling map applied coordinatewise. Copies share a memo cache.
class WeightSequence {
 public:
  /// Explicit list; must be in (0,1) and nonincreasing.
  static WeightSequence explicit_list(std::vector<double> values);
  /// t_j = p_j^{-alpha}, 0 < alpha <= 1.
  static WeightSequence power_law(double alpha, const PrimeTable& table = PrimeTable::standard());

  /// t_j, 1-based. Throws std::out_of_range past the end of an explicit list.
  double operator()(std::size_t j) const;
  /// t_j, or 0 past the end of an explicit list (a finitely supported
  /// element of c_0).
  double value_or_zero(std::size_t j) const;
  /// Materialized length for explicit lists; nullopt for power laws.
  std::optional<std::size_t> length() const;
  std::vector<double> prefix(std::size_t n) const;

  bool is_power_law() const { return alpha_.has_value(); }
  std::optional<double> alpha() const { return alpha_; }
  bool eta_applied() const { return eta_applied_; }
  /// True iff t_1 >= t_2 >= ... >= t_n.
  bool is_decreasing(std::size_t n) const;

  WeightSequence eta() const;

  struct Rearrangement;
  /// Sorts a materialized prefix into descending order. For power laws the
  /// prefix is grown until no later entry can exceed its smallest member.
  Rearrangement rearranged(std::size_t min_length) const;

  std::string describe() const;

 private:
  struct Cache;
  WeightSequence() = default;

  std::optional<double> alpha_;
  std::vector<double> values_;  // explicit entries (already transformed)
  bool eta_applied_ = false;
  const PrimeTable* table_ = nullptr;
  std::shared_ptr<Cache> cache_;
};

struct WeightSequence::Rearrangement {
  WeightSequence sorted;
  /// permutation[i] is the 1-based original position of sorted entry i+1.
  std::vector<std::size_t> permutation;
  bool was_sorted = true;
};

WeightSequence eta(const WeightSequence& t);
WeightSequence power_law(double alpha);

/// kappa(t) = 0 if t_1 < 1/2, else max{j : t_j >= 1/2}.
std::size_t kappa(const WeightSequence& t);

/// t^beta = prod_{j in supp beta} t_j^{beta_j}; 1 for the empty multi-index.
double weight_power(const WeightSequence& t, const MultiIndex& beta);

}  // namespace gcdlab
