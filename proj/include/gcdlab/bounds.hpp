#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gcdlab/weights.hpp"

// Closed-form evaluators for the upper and lower bounds on GCD sums.
//
// Conventions: log is the natural logarithm and [x] is floor(x). N is taken
// as a real number >= 3 so that log log N > 0.
//
// Constants that the estimates leave unspecified are explicit parameters
// (see BoundParams). For reference, the truncation level J used in the
// maximal-inequality argument satisfies
//   J^{eps/2} = (log N)^{1/2} exp((2 c_hat / eps) (log N)^{eps/2}),
//   log J     = (1/eps) log log N + (4 c_hat / eps^2) (log N)^{eps/2},
// and with eps = 1/log log N this gives log J = O((log log N)^2). It is not
// evaluated at runtime.

namespace gcdlab {

struct BoundParams {
  double alpha = 0.75;
  double N = 3.0;
  double xi = 2.0;       // must satisfy xi * log 2 > 1
  double epsilon = 0.1;
  double C = 1.0;        // exponential-term constant
  double C_eps = 1.0;    // multiplicative constant in the main estimate
  double c = 1.0;        // generic constant in the comparison bounds
  double c_hat = 4.0;    // never below 4
  double tau0 = 0.9;     // fallback weight for the v selector
  std::size_t j0 = 3;    // small-index cutoff

  /// Throws std::invalid_argument on the first violated constraint.
  void validate() const;
};

/// g(alpha, N) for 0 < alpha < 1; alpha = 1/2 uses the lower branch.
double g_bound(double alpha, double N);
/// C_eps exp((1 + eps) g(alpha, N)).
double gcd_sum_ceiling(double alpha, double N, double epsilon, double C_eps);

/// r_N = [xi log N] + kappa(t).
std::size_t r_of(double N, double xi, std::size_t kappa);

struct Th4Evaluation {
  double value = 0.0;
  double first_product = 0.0;
  double second_product = 0.0;
  double exp_term = 0.0;
  std::size_t r_N = 0;
  std::size_t kappa = 0;
  /// Whether eta(t) had to be reordered to become nonincreasing.
  bool rearranged = false;
};

/// Right-hand side of the general upper bound
///   prod_{j<=r_N} (1-v_j)^{-1} (1 - tau_j^2/v_j)^{-1}
///   * prod_{r_N<k<N} (1 - tau_k^2 / v_{r_N})^{-1} + exp(C sum_{l<N} t_l^2)
/// with tau = eta(t) sorted nonincreasing. Requires 1 > v_1 >= ... >= v_{r_N}
/// and v_j > tau_j^2; violations throw std::invalid_argument naming the index.
/// Entries past the end of an explicit weight list count as zero.
Th4Evaluation th4_rhs(const WeightSequence& t, std::span<const double> v, double xi, double C,
                      double N);

struct VSelection {
  std::vector<double> v;  // length r_N
  bool fallback = false;  // constant tau0 was used
  std::size_t r_N = 0;
};

/// The v selector used to derive the main estimate from th4_rhs:
///   alpha > 1/2: v_j = max(tau_j, (2 alpha - 1)^{-1/2} tau_{r_N}),
///   alpha = 1/2: v_j = max(tau_j, (log log N / log N)^{1/2}),
/// with tau = eta(t) sorted nonincreasing. If the floor term is >= 1 the
/// constant params.tau0 is used instead, which must exceed tau_1^2.
VSelection default_v(double alpha, double N, const WeightSequence& t, const BoundParams& params);

/// c (log log N)^2.
double gal_bound(double N, double c);
/// C exp(c log N / log log N).
double dyer_harman_bound(double N, double C, double c);
/// c(alpha) exp((log N)^{(4-4 alpha)/(3-2 alpha)}).
double dh_intermediate(double alpha, double N, double c_of_alpha);
/// exp(2 sqrt(log N / log log N)).
double harman_floor(double N);
/// exp((c/(1-alpha)) (log N)^{1-alpha} (log log N)^{-alpha}); the growth of
/// the square-free family for 1/2 < alpha < 1.
double squarefree_lower_shape(double alpha, double N, double c);
/// c (log N)^{-2 alpha} N^{1 - 2 alpha}; the growth of the primes family
/// for alpha < 1/2.
double primes_lower_shape(double alpha, double N, double c);

}  // namespace gcdlab
