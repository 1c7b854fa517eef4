#include "gcdlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gcdlab/numeric.hpp"

namespace gcdlab {

namespace {

void require_N(double N) {
  if (!(N >= 3.0)) throw std::invalid_argument("bounds need N >= 3 (log log N must be positive)");
}

std::string idx(std::size_t j) { return std::to_string(j); }

}  // namespace

void BoundParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0,1]");
  require_N(N);
  if (!(xi * std::log(2.0) > 1.0)) throw std::invalid_argument("xi must exceed 1/log 2");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(C > 0.0 && C_eps > 0.0 && c > 0.0)) throw std::invalid_argument("constants must be positive");
  if (!(c_hat >= 4.0)) throw std::invalid_argument("c_hat must be at least 4");
  if (!(tau0 > 0.0 && tau0 < 1.0)) throw std::invalid_argument("tau0 must lie in (0,1)");
  if (j0 == 0) throw std::invalid_argument("j0 must be positive");
}

double g_bound(double alpha, double N) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("g_bound: alpha must lie in (0,1)");
  require_N(N);
  const double L = std::log(N);
  const double LL = std::log(L);
  if (alpha <= 0.5) return 50.0 * alpha * std::sqrt(L * LL) + (1.0 - 2.0 * alpha) * L;
  const double lead = 8.0 / (1.0 - alpha) + 16.0 * std::pow(2.0, -alpha) / std::sqrt(2.0 * alpha - 1.0);
  return lead * std::pow(L, 1.0 - alpha) * std::pow(LL, -alpha) +
         std::pow(L, (1.0 - alpha) / 2.0) / (1.0 - alpha);
}

double gcd_sum_ceiling(double alpha, double N, double epsilon, double C_eps) {
  return C_eps * std::exp((1.0 + epsilon) * g_bound(alpha, N));
}

std::size_t r_of(double N, double xi, std::size_t kappa) {
  return static_cast<std::size_t>(std::floor(xi * std::log(N))) + kappa;
}

Th4Evaluation th4_rhs(const WeightSequence& t, std::span<const double> v, double xi, double C,
                      double N) {
  require_N(N);
  if (!(xi * std::log(2.0) > 1.0)) throw std::invalid_argument("th4_rhs: xi must exceed 1/log 2");
  Th4Evaluation out;
  out.kappa = kappa(t);
  out.r_N = r_of(N, xi, out.kappa);
  const std::size_t r = out.r_N;
  const auto last = static_cast<std::size_t>(std::ceil(N)) - 1;  // products run to N-1
  if (r == 0) throw std::invalid_argument("th4_rhs: r_N must be positive");
  if (v.size() < r) {
    throw std::invalid_argument("th4_rhs: need " + idx(r) + " v entries, got " + idx(v.size()));
  }
  const auto arr = t.eta().rearranged(std::max(r, last));
  out.rearranged = !arr.was_sorted;
  const WeightSequence& tau = arr.sorted;

  if (!(v[0] < 1.0)) throw std::invalid_argument("th4_rhs: v_1 must be below 1");
  for (std::size_t j = 1; j <= r; ++j) {
    if (j > 1 && v[j - 1] > v[j - 2]) {
      throw std::invalid_argument("th4_rhs: v must be nonincreasing (v_" + idx(j) + " > v_" +
                                  idx(j - 1) + ")");
    }
    const double tj = tau.value_or_zero(j);
    if (!(v[j - 1] > tj * tj)) {
      throw std::invalid_argument("th4_rhs: v_" + idx(j) + " must exceed tau_" + idx(j) + "^2");
    }
  }
  double first = 1.0;
  for (std::size_t j = 1; j <= r; ++j) {
    const double tj = tau.value_or_zero(j);
    first /= (1.0 - v[j - 1]) * (1.0 - tj * tj / v[j - 1]);
  }
  double second = 1.0;
  const double v_r = v[r - 1];
  for (std::size_t k = r + 1; k <= last; ++k) {
    const double tk = tau.value_or_zero(k);
    second /= 1.0 - tk * tk / v_r;
  }
  CompensatedSum squares;
  for (std::size_t l = 1; l <= last; ++l) {
    const double tl = t.value_or_zero(l);
    squares.add(tl * tl);
  }
  out.first_product = first;
  out.second_product = second;
  out.exp_term = std::exp(C * squares.value());
  out.value = first * second + out.exp_term;
  return out;
}

VSelection default_v(double alpha, double N, const WeightSequence& t, const BoundParams& params) {
  if (!(alpha >= 0.5 && alpha < 1.0)) throw std::invalid_argument("default_v: alpha must lie in [1/2,1)");
  require_N(N);
  VSelection out;
  out.r_N = r_of(N, params.xi, kappa(t));
  const std::size_t r = out.r_N;
  const auto arr = t.eta().rearranged(r);
  const WeightSequence& tau = arr.sorted;
  double floor_term;
  if (alpha > 0.5) {
    floor_term = tau.value_or_zero(r) / std::sqrt(2.0 * alpha - 1.0);
  } else {
    const double L = std::log(N);
    floor_term = std::sqrt(std::log(L) / L);
  }
  out.v.resize(r);
  if (floor_term < 1.0) {
    for (std::size_t j = 1; j <= r; ++j) out.v[j - 1] = std::max(tau.value_or_zero(j), floor_term);
    return out;
  }
  const double t1 = tau.value_or_zero(1);
  if (!(params.tau0 > t1 * t1 && params.tau0 < 1.0)) {
    throw std::invalid_argument("default_v: fallback tau0 must lie in (tau_1^2, 1)");
  }
  std::fill(out.v.begin(), out.v.end(), params.tau0);
  out.fallback = true;
  return out;
}

double gal_bound(double N, double c) {
  require_N(N);
  const double LL = std::log(std::log(N));
  return c * LL * LL;
}

double dyer_harman_bound(double N, double C, double c) {
  require_N(N);
  const double L = std::log(N);
  return C * std::exp(c * L / std::log(L));
}

double dh_intermediate(double alpha, double N, double c_of_alpha) {
  require_N(N);
  if (!(alpha > 0.5 && alpha < 1.0)) throw std::invalid_argument("dh_intermediate: alpha must lie in (1/2,1)");
  const double exponent = (4.0 - 4.0 * alpha) / (3.0 - 2.0 * alpha);
  return c_of_alpha * std::exp(std::pow(std::log(N), exponent));
}

double harman_floor(double N) {
  require_N(N);
  const double L = std::log(N);
  return std::exp(2.0 * std::sqrt(L / std::log(L)));
}

double squarefree_lower_shape(double alpha, double N, double c) {
  require_N(N);
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
  const double L = std::log(N);
  return std::exp(c / (1.0 - alpha) * std::pow(L, 1.0 - alpha) * std::pow(std::log(L), -alpha));
}

double primes_lower_shape(double alpha, double N, double c) {
  require_N(N);
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0,1]");
  return c * std::pow(std::log(N), -2.0 * alpha) * std::pow(N, 1.0 - 2.0 * alpha);
}

}  // namespace gcdlab
