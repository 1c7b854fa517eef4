#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gcdlab/gcdcore.hpp"
#include "gcdlab/weights.hpp"

namespace gcdlab {

/// Dense symmetric N x N generalized GCD matrix (t^{|beta_k - beta_l|}),
/// row-major, with a text note on where it came from.
class GcdMatrix {
 public:
  GcdMatrix(std::size_t order, std::vector<double> entries, std::string provenance);
  static GcdMatrix identity(std::size_t order);

  std::size_t order() const { return order_; }
  double operator()(std::size_t k, std::size_t l) const { return entries_[k * order_ + l]; }
  std::span<const double> entries() const { return entries_; }
  const std::string& provenance() const { return provenance_; }

  void write_csv(std::ostream& os) const;

 private:
  std::size_t order_;
  std::vector<double> entries_;
  std::string provenance_;
};

GcdMatrix build_matrix(const IndexSet& B, const WeightSequence& t);
/// Entries gcd(n_k,n_l)^{2 alpha} / (n_k n_l)^alpha from integer gcds.
GcdMatrix build_matrix(const IntegerSequence& seq, double alpha);

enum class EigenMethod { automatic, jacobi, iterative };

struct EigenResult {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  std::size_t iterations = 0;  // Jacobi sweeps, or total power/inverse steps
  double residual = 0.0;       // off-diagonal Frobenius norm, or max Rayleigh residual
  bool converged = false;
  EigenMethod method = EigenMethod::jacobi;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

struct EigenOptions {
  double tol = 1e-10;
  std::size_t sweep_cap = 30;
  std::size_t iteration_cap = 200000;
  /// automatic switches from Jacobi to power/inverse iteration above this order.
  std::size_t jacobi_max_order = 512;
  EigenMethod method = EigenMethod::automatic;
};

/// Extreme eigenvalues of a symmetric matrix. Cyclic Jacobi drives the
/// off-diagonal Frobenius norm below tol; the iterative path certifies each
/// extreme with a Rayleigh-quotient residual ||Mx - rho x|| <= tol.
/// Throws ConvergenceError when the caps are hit first.
EigenResult eig_extremes(const GcdMatrix& M, const EigenOptions& options = {});

/// All eigenvalues (ascending) by cyclic Jacobi.
std::vector<double> jacobi_eigenvalues(const GcdMatrix& M, double tol = 1e-12,
                                       std::size_t sweep_cap = 60);

/// (prod_{j<N} (1-t_j)/(1+t_j), prod_{j<N} (1+t_j)/(1-t_j)). Entries past the
/// end of an explicit list count as zero.
std::pair<double, double> sandwich_bounds(const WeightSequence& t, std::size_t N);

/// (e^2 + 1)([log N] + 2) * gamma_max, natural log, floor.
double theorem41_rhs(std::size_t N, double gamma_max);

/// 1^T M 1 / N.
double rayleigh_all_ones(const GcdMatrix& M);

}  // namespace gcdlab
