#include "gcdlab/multiindex.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gcdlab {

PrimeTable::PrimeTable(std::size_t count) {
  if (count == 0) throw std::invalid_argument("prime table needs at least one prime");
  // p_n < n (ln n + ln ln n) for n >= 6.
  const double n = static_cast<double>(std::max<std::size_t>(count, 6));
  const auto limit = static_cast<std::size_t>(n * (std::log(n) + std::log(std::log(n)))) + 16;
  std::vector<bool> composite(limit + 1, false);
  primes_.reserve(count);
  for (std::size_t i = 2; i <= limit && primes_.size() < count; ++i) {
    if (composite[i]) continue;
    primes_.push_back(i);
    for (std::size_t k = i * i; k <= limit; k += i) composite[k] = true;
  }
}

std::uint64_t PrimeTable::prime(std::size_t position) const {
  if (position == 0 || position > primes_.size()) {
    throw PrimeTableExhausted("prime position " + std::to_string(position) +
                              " outside table of " + std::to_string(primes_.size()) + " primes");
  }
  return primes_[position - 1];
}

std::size_t PrimeTable::position_of(std::uint64_t p) const {
  auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
  if (it == primes_.end() || *it != p) return 0;
  return static_cast<std::size_t>(it - primes_.begin()) + 1;
}

const PrimeTable& PrimeTable::standard() {
  static const PrimeTable table(kDefaultCount);
  return table;
}

MultiIndex::MultiIndex(std::initializer_list<Entry> entries)
    : MultiIndex(std::vector<Entry>(entries)) {}

MultiIndex::MultiIndex(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end());
  Position last = 0;
  for (const auto& [pos, exp] : entries) {
    if (pos == 0) throw std::invalid_argument("multi-index positions are 1-based");
    if (pos == last) {
      throw std::invalid_argument("duplicate position " + std::to_string(pos) + " in multi-index");
    }
    last = pos;
    if (exp > 0) entries_.emplace_back(pos, exp);
  }
}

std::vector<MultiIndex::Position> MultiIndex::support() const {
  std::vector<Position> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.first);
  return out;
}

MultiIndex::Exponent MultiIndex::operator[](Position j) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), j,
                             [](const Entry& e, Position p) { return e.first < p; });
  return (it != entries_.end() && it->first == j) ? it->second : 0;
}

std::uint64_t MultiIndex::degree() const {
  std::uint64_t d = 0;
  for (const auto& e : entries_) d += e.second;
  return d;
}

MultiIndex MultiIndex::with(Position j, Exponent e) const {
  MultiIndex out;
  out.entries_.reserve(entries_.size() + 1);
  bool placed = false;
  for (const auto& entry : entries_) {
    if (!placed && entry.first >= j) {
      if (e > 0) out.entries_.emplace_back(j, e);
      placed = true;
      if (entry.first == j) continue;
    }
    out.entries_.push_back(entry);
  }
  if (!placed && e > 0) out.entries_.emplace_back(j, e);
  return out;
}

MultiIndex MultiIndex::plus(const MultiIndex& other) const {
  MultiIndex out;
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      out.entries_.push_back(*a++);
    } else if (a == entries_.end() || b->first < a->first) {
      out.entries_.push_back(*b++);
    } else {
      out.entries_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return out;
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) os << ", ";
    os << entries_[i].first << ':' << entries_[i].second;
  }
  os << '}';
  return os.str();
}

MultiIndex factorize(std::uint64_t n, const PrimeTable& table) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  std::vector<MultiIndex::Entry> entries;
  const auto& primes = table.values();
  for (std::size_t i = 0; i < primes.size() && n > 1; ++i) {
    const std::uint64_t p = primes[i];
    if (p > n / p) break;  // remaining n is 1 or a prime
    MultiIndex::Exponent e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) entries.emplace_back(static_cast<MultiIndex::Position>(i + 1), e);
  }
  if (n > 1) {
    const std::size_t pos = table.position_of(n);
    if (pos == 0) {
      throw PrimeTableExhausted("factorize: prime factor beyond the table (largest tabulated prime " +
                                std::to_string(table.largest()) + ")");
    }
    // n is a prime larger than every prime divided out so far, so it
    // cannot collide with an existing entry.
    entries.emplace_back(static_cast<MultiIndex::Position>(pos), 1);
  }
  return MultiIndex(std::move(entries));
}

std::uint64_t compose(const MultiIndex& beta, const PrimeTable& table) {
  std::uint64_t n = 1;
  for (const auto& [pos, exp] : beta.entries()) {
    const std::uint64_t p = table.prime(pos);
    for (MultiIndex::Exponent k = 0; k < exp; ++k) {
      if (__builtin_mul_overflow(n, p, &n)) {
        throw std::overflow_error("compose: " + beta.to_string() + " exceeds 64-bit range");
      }
    }
  }
  return n;
}

MultiIndex abs_diff(const MultiIndex& beta, const MultiIndex& mu) {
  std::vector<MultiIndex::Entry> out;
  const auto& a = beta.entries();
  const auto& b = mu.entries();
  std::size_t i = 0, k = 0;
  while (i < a.size() || k < b.size()) {
    if (k == b.size() || (i < a.size() && a[i].first < b[k].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[k].first < a[i].first) {
      out.push_back(b[k++]);
    } else {
      const auto x = a[i].second, y = b[k].second;
      if (x != y) out.emplace_back(a[i].first, x > y ? x - y : y - x);
      ++i;
      ++k;
    }
  }
  return MultiIndex(std::move(out));
}

bool leq(const MultiIndex& beta, const MultiIndex& mu) {
  for (const auto& [pos, exp] : beta.entries()) {
    if (exp > mu[pos]) return false;
  }
  return true;
}

}  // namespace gcdlab
