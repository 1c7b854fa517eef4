#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "gcdlab/gcdcore.hpp"
#include "gcdlab/spectral.hpp"
#include "oracles.hpp"

namespace support {

using Rng = std::mt19937_64;

inline std::vector<std::uint64_t> random_values(Rng& rng, std::size_t min_n, std::size_t max_n,
                                                std::uint64_t max_value) {
  std::uniform_int_distribution<std::size_t> size(min_n, max_n);
  std::uniform_int_distribution<std::uint64_t> value(1, max_value);
  std::set<std::uint64_t> values;
  const std::size_t n = size(rng);
  while (values.size() < n) values.insert(value(rng));
  return {values.begin(), values.end()};
}

inline gcdlab::IndexSet random_index_set(Rng& rng, std::size_t min_n, std::size_t max_n,
                                         unsigned positions, unsigned max_exp) {
  std::uniform_int_distribution<std::size_t> size(min_n, max_n);
  std::uniform_int_distribution<unsigned> exp(0, max_exp);
  std::size_t n = size(rng);
  std::size_t capacity = 1;
  for (unsigned j = 0; j < positions && capacity < n; ++j) capacity *= max_exp + 1;
  n = std::min(n, capacity);
  std::set<gcdlab::MultiIndex> members;
  while (members.size() < n) {
    std::vector<gcdlab::MultiIndex::Entry> e;
    for (unsigned j = 1; j <= positions; ++j) e.emplace_back(j, exp(rng));
    members.insert(gcdlab::MultiIndex(std::move(e)));
  }
  std::vector<gcdlab::MultiIndex> v(members.begin(), members.end());
  std::shuffle(v.begin(), v.end(), rng);
  return gcdlab::IndexSet(std::move(v));
}

/// Nonincreasing weights drawn uniformly from [lo, hi).
inline std::vector<double> random_weights(Rng& rng, std::size_t length, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> t(length);
  for (double& x : t) x = u(rng);
  std::sort(t.rbegin(), t.rend());
  return t;
}

inline std::vector<oracle::Exponents> exponents(const gcdlab::IndexSet& B) {
  std::vector<oracle::Exponents> out;
  for (const auto& beta : B) {
    oracle::Exponents e;
    for (auto [j, x] : beta.entries()) e[j] = x;
    out.push_back(e);
  }
  return out;
}

inline std::vector<oracle::Real> widen(const std::vector<double>& x) { return {x.begin(), x.end()}; }

inline oracle::Dense dense(const gcdlab::GcdMatrix& M) {
  oracle::Dense A(M.order(), std::vector<oracle::Real>(M.order()));
  for (std::size_t i = 0; i < M.order(); ++i) {
    for (std::size_t j = 0; j < M.order(); ++j) A[i][j] = M(i, j);
  }
  return A;
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

}  // namespace support
