#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gcdlab/gcdcore.hpp"

namespace gcdlab {

/// phi(x) = {x} - 1/2.
double sawtooth(double x);

/// Coefficients c_k attached to a strictly increasing sequence n_k; the
/// system is sum_k c_k phi(n_k x).
class DilatedSystem {
 public:
  DilatedSystem(IntegerSequence seq, std::vector<double> coeffs);

  std::size_t size() const { return seq_.size(); }
  const IntegerSequence& sequence() const { return seq_; }
  std::span<const double> coeffs() const { return coeffs_; }
  double coeff_energy() const;  // sum c_k^2
  /// First M terms.
  DilatedSystem prefix(std::size_t M) const;

 private:
  IntegerSequence seq_;
  std::vector<double> coeffs_;
};

/// int_0^1 phi(mx) phi(nx) dx = gcd(m,n)^2 / (12 m n).
double franel_landau(std::uint64_t m, std::uint64_t n);

/// ||sum_k c_k phi(n_k x)||_2^2 = (1/12) sum_{k,l} c_k c_l gcd^2 / (n_k n_l).
double sawtooth_l2_sq(const DilatedSystem& sys);

struct ResonanceValue {
  double value = 0.0;
  double tail_bound = 0.0;   // bound on the truncation error of the j-series
  std::uint64_t j_star = 0;  // first admissible j
};

/// sum_{j1, j2 >= J+1, j1 v = j2 w} (j1 j2)^{-s} for v <= w, s > 1/2.
/// The solutions are j1 = j w/g, j2 = j v/g with g = gcd(v,w), so the sum is
/// (g^2/(vw))^s sum_{j >= ceil((J+1) g / v)} j^{-2s}. The j-series is summed
/// directly for a block of terms and closed with an Euler-Maclaurin tail.
ResonanceValue resonance_sum(std::uint64_t v, std::uint64_t w, std::uint64_t J, double s);

struct MaximalOptions {
  std::size_t max_terms = 64;
  std::size_t max_cells = 5000000;
};

struct MaximalValue {
  double value = 0.0;
  std::size_t cells = 0;
};

/// Exact int_0^1 (max_{1<=M<=N} |sum_{k<=M} c_k phi(n_k x)|)^2 dx. Every
/// partial sum is linear between consecutive points j/n_k, so on each cell
/// the maximal function is the upper envelope of the 2N lines +-S_M, and its
/// square integrates exactly. Throws std::length_error past the budget;
/// maximal_l2_grid is the fallback for larger systems.
MaximalValue maximal_l2_sq(const DilatedSystem& sys, const MaximalOptions& options = {});

/// Midpoint-rule estimate of the same integral with `points` nodes.
double maximal_l2_grid(const DilatedSystem& sys, std::size_t points);

struct ChRatioRow {
  std::size_t N = 0;
  double maximal_l2_sq = 0.0;
  double coeff_energy = 0.0;
  /// maximal / (sum c^2 (log log N)^4)
  double ratio_to_loglog4 = 0.0;
  /// sawtooth_l2_sq / sum c^2; a lower bound for the largest eigenvalue of
  /// the alpha = 1 GCD matrix divided by 12.
  double lower_witness = 0.0;
};

/// Requires N >= 3.
ChRatioRow ch_ratio(const DilatedSystem& sys, const MaximalOptions& options = {});

/// p(x) = sum_{j=1}^{J} a_j cos(2 pi j x), the smooth part in the split
/// f = p + r of an even 1-periodic function; a[0] is a_1.
double cosine_partial_sum(std::span<const double> a, double x);

}  // namespace gcdlab
