#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "gcdlab/gcdcore.hpp"
#include "gcdlab/weights.hpp"

namespace gcdlab {

/// A point z on the K-torus, stored as angle fractions in [0,1):
/// z_k = exp(2 pi i angles[k]).
class TorusSample {
 public:
  explicit TorusSample(std::vector<double> angles);
  std::size_t dimension() const { return angles_.size(); }
  std::span<const double> angles() const { return angles_; }

 private:
  std::vector<double> angles_;
};

/// P_K(zeta, z) = prod_k (1 - zeta_k^2) / |1 - zeta_k z_k|^2 for real
/// zeta_k in [0, 1).
double poisson_kernel(std::span<const double> zeta, const TorusSample& z);

struct GridQuadrature {
  std::size_t max_points_per_dim = 1024;
  std::size_t max_total_points = std::size_t{1} << 26;
  /// Relative agreement required between successive doublings.
  double budget = 1e-10;
};

enum class McSampling {
  uniform,  // z uniform on the torus, integrand weighted by P_K
  kernel,   // z drawn from P_K itself (wrapped Cauchy per coordinate)
};

struct MonteCarlo {
  std::size_t samples = 1000000;
  std::uint64_t seed = 0;
  McSampling sampling = McSampling::uniform;
  std::size_t shard_size = 1 << 16;
};

using IdentityMethod = std::variant<GridQuadrature, MonteCarlo>;

struct IdentityCheck {
  double exact_form = 0.0;   // sum_{k,l} t^{|beta_k - beta_l|} c_k c_l
  double estimate = 0.0;     // integral of |sum c_j z^{beta_j}|^2 P_K(t,z)
  double error_bound = 0.0;  // last doubling difference, or one standard error
  std::size_t dimension = 0;
  std::size_t points = 0;    // grid points per dimension, or samples
  bool converged = true;
};

/// Quadratic form sum_{k,l} t^{|beta_k - beta_l|} c_k c_l.
double quadratic_form(const IndexSet& B, std::span<const double> c, const WeightSequence& t);

/// Evaluates both sides of the Poisson-integral identity for the quadratic
/// form. The grid path is a tensor trapezoid rule refined by doubling; it
/// accepts K <= 4 and t_k <= 0.95. The Monte Carlo path reports one
/// standard error as error_bound.
IdentityCheck verify_identity(const IndexSet& B, std::span<const double> c, const WeightSequence& t,
                              const IdentityMethod& method);

/// Grid quadrature of P_K(zeta, .) over the torus (should be 1).
double kernel_mass(std::span<const double> zeta, std::size_t points_per_dim);

/// Truncation of the orthonormal expansion
///   S(tau,B) = (1/N) prod_{k<=K} (1 - tau_k^2)
///              sum_{beta: R(beta)<=K} (sum_{j: beta_j <= beta} tau^{beta - beta_j})^2
/// to beta with every coordinate <= degree_cap. `dims` defaults to
/// max(1, max_k R(beta_k)). Throws std::length_error when (cap+1)^K exceeds
/// state_budget.
double piden_partial(const WeightSequence& tau, const IndexSet& B, std::size_t degree_cap,
                     std::size_t dims = 0, std::size_t state_budget = 20000000);

}  // namespace gcdlab
