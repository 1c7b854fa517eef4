#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gcdlab {

/// Ascending table of the first `count` primes, built by a sieve. Position j
/// (1-based) holds p_j. Lookups beyond the table throw rather than extend.
class PrimeTable {
 public:
  static constexpr std::size_t kDefaultCount = 100000;  // covers every prime below 10^6

  explicit PrimeTable(std::size_t count = kDefaultCount);

  std::size_t size() const { return primes_.size(); }
  std::uint64_t prime(std::size_t position) const;  // 1-based
  std::uint64_t largest() const { return primes_.back(); }
  /// Position of p in the table, or 0 if p is not a tabulated prime.
  std::size_t position_of(std::uint64_t p) const;
  const std::vector<std::uint64_t>& values() const { return primes_; }

  /// Shared default table (first 10^4 primes).
  static const PrimeTable& standard();

 private:
  std::vector<std::uint64_t> primes_;
};

class PrimeTableExhausted : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Sparse exponent vector beta: prime position -> positive exponent. Represents
/// the integer p^beta. The empty multi-index stands for 1.
class MultiIndex {
 public:
  using Position = std::uint32_t;
  using Exponent = std::uint32_t;
  using Entry = std::pair<Position, Exponent>;

  MultiIndex() = default;
  MultiIndex(std::initializer_list<Entry> entries);
  /// Entries need not be sorted; zero exponents are dropped, duplicate
  /// positions are rejected.
  explicit MultiIndex(std::vector<Entry> entries);

  static MultiIndex unit(Position j) { return MultiIndex({{j, 1}}); }

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  /// Number of positions in the support.
  std::size_t support_size() const { return entries_.size(); }
  std::vector<Position> support() const;
  /// Largest support position, 0 for the empty multi-index.
  Position max_position() const { return entries_.empty() ? 0 : entries_.back().first; }
  Exponent operator[](Position j) const;
  /// Sum of all exponents (the total degree).
  std::uint64_t degree() const;

  MultiIndex with(Position j, Exponent e) const;
  MultiIndex plus(const MultiIndex& other) const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

  std::string to_string() const;  // "{1:2, 2:1}"

 private:
  std::vector<Entry> entries_;  // sorted by position, exponents > 0
};

MultiIndex factorize(std::uint64_t n, const PrimeTable& table = PrimeTable::standard());
/// Throws std::overflow_error if the product does not fit 64 bits.
std::uint64_t compose(const MultiIndex& beta, const PrimeTable& table = PrimeTable::standard());
MultiIndex abs_diff(const MultiIndex& beta, const MultiIndex& mu);
bool leq(const MultiIndex& beta, const MultiIndex& mu);

}  // namespace gcdlab
