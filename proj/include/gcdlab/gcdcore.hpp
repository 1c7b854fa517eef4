#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "gcdlab/multiindex.hpp"
#include "gcdlab/weights.hpp"

namespace gcdlab {

/// Ordered set B of N >= 1 pairwise distinct multi-indices.
class IndexSet {
 public:
  explicit IndexSet(std::vector<MultiIndex> members);
  IndexSet(std::initializer_list<MultiIndex> members)
      : IndexSet(std::vector<MultiIndex>(members)) {}

  std::size_t size() const { return members_.size(); }
  const MultiIndex& operator[](std::size_t k) const { return members_[k]; }
  const std::vector<MultiIndex>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  /// Union of supports, ascending.
  std::vector<MultiIndex::Position> support_union() const;
  /// max_k R(beta_k).
  MultiIndex::Position max_position() const;
  bool contains(const MultiIndex& beta) const;
  /// Members in canonical (lexicographic) order, for set comparisons.
  std::vector<MultiIndex> sorted_members() const;

 private:
  std::vector<MultiIndex> members_;
};

/// Strictly increasing positive integers n_1 < ... < n_N.
class IntegerSequence {
 public:
  explicit IntegerSequence(std::vector<std::uint64_t> values);
  /// Sorts and validates distinctness instead of requiring sorted input.
  static IntegerSequence from_unsorted(std::vector<std::uint64_t> values);

  std::size_t size() const { return values_.size(); }
  std::uint64_t operator[](std::size_t k) const { return values_[k]; }
  const std::vector<std::uint64_t>& values() const { return values_; }

 private:
  std::vector<std::uint64_t> values_;
};

IndexSet factorize_all(const IntegerSequence& seq, const PrimeTable& table = PrimeTable::standard());

/// sum_{k,l} gcd(n_k,n_l)^{2 alpha} / (n_k n_l)^alpha, divided by N when
/// normalized. gcds are taken on the integers directly.
double gcd_sum(const IntegerSequence& seq, double alpha, bool normalized);

/// S(t,B) = (1/N) sum_{k,l} t^{|beta_k - beta_l|}; the total when not normalized.
double s_form(const WeightSequence& t, const IndexSet& B, bool normalized = true);

/// All 2^r square-free products of the first r primes, ascending.
IntegerSequence extremal_squarefree(unsigned r);
/// N prod_{j<=r} (1 + p_j^{-alpha}) with N = 2^r: the unnormalized total
/// of gcd_sum over extremal_squarefree(r).
double squarefree_closed_form(unsigned r, double alpha);
/// The first N primes.
IntegerSequence extremal_primes(std::size_t n);
/// 1, 2, ..., N.
IntegerSequence first_integers(std::size_t n);

}  // namespace gcdlab
