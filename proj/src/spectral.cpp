#include "gcdlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "gcdlab/numeric.hpp"

namespace gcdlab {

GcdMatrix::GcdMatrix(std::size_t order, std::vector<double> entries, std::string provenance)
    : order_(order), entries_(std::move(entries)), provenance_(std::move(provenance)) {
  if (order_ == 0) throw std::invalid_argument("matrix order must be positive");
  if (entries_.size() != order_ * order_) {
    throw std::invalid_argument("matrix storage does not match order");
  }
  for (std::size_t k = 0; k < order_; ++k) {
    for (std::size_t l = k + 1; l < order_; ++l) {
      if ((*this)(k, l) != (*this)(l, k)) throw std::invalid_argument("matrix is not symmetric");
    }
  }
}

GcdMatrix GcdMatrix::identity(std::size_t order) {
  std::vector<double> e(order * order, 0.0);
  for (std::size_t k = 0; k < order; ++k) e[k * order + k] = 1.0;
  return GcdMatrix(order, std::move(e), "identity");
}

void GcdMatrix::write_csv(std::ostream& os) const {
  char buf[32];
  for (std::size_t k = 0; k < order_; ++k) {
    for (std::size_t l = 0; l < order_; ++l) {
      std::snprintf(buf, sizeof buf, "%.17g", (*this)(k, l));
      os << (l ? "," : "") << buf;
    }
    os << '\n';
  }
}

GcdMatrix build_matrix(const IndexSet& B, const WeightSequence& t) {
  const std::size_t N = B.size();
  std::vector<double> e(N * N, 1.0);
  parallel_for(N, [&](std::size_t k) {
    for (std::size_t l = k + 1; l < N; ++l) e[k * N + l] = weight_power(t, abs_diff(B[k], B[l]));
  });
  for (std::size_t k = 0; k < N; ++k) {
    for (std::size_t l = k + 1; l < N; ++l) e[l * N + k] = e[k * N + l];
  }
  return GcdMatrix(N, std::move(e), "index_set[" + std::to_string(N) + "] / " + t.describe());
}

GcdMatrix build_matrix(const IntegerSequence& seq, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0,1]");
  const std::size_t N = seq.size();
  const auto& n = seq.values();
  std::vector<double> e(N * N, 1.0);
  parallel_for(N, [&](std::size_t k) {
    for (std::size_t l = k + 1; l < N; ++l) {
      const double g = static_cast<double>(std::gcd(n[k], n[l]));
      const double ratio = (g / static_cast<double>(n[k])) * (g / static_cast<double>(n[l]));
      e[k * N + l] = alpha == 1.0 ? ratio : std::pow(ratio, alpha);
    }
  });
  for (std::size_t k = 0; k < N; ++k) {
    for (std::size_t l = k + 1; l < N; ++l) e[l * N + k] = e[k * N + l];
  }
  char note[64];
  std::snprintf(note, sizeof note, "integers[%zu] / alpha=%.17g", N, alpha);
  return GcdMatrix(N, std::move(e), note);
}

namespace {

double off_norm(const std::vector<double>& a, std::size_t n) {
  CompensatedSum s;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) s.add(2.0 * a[i * n + j] * a[i * n + j]);
  }
  return std::sqrt(s.value());
}

struct JacobiOutcome {
  std::vector<double> diag;
  std::size_t sweeps;
  double residual;
  bool converged;
};

// Cyclic-by-row Jacobi with the stable rotation formulas of Rutishauser.
JacobiOutcome cyclic_jacobi(const GcdMatrix& M, double tol, std::size_t sweep_cap) {
  const std::size_t n = M.order();
  std::vector<double> a(M.entries().begin(), M.entries().end());
  double off = off_norm(a, n);
  std::size_t sweeps = 0;
  while (off > tol && sweeps < sweep_cap) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        a[p * n + p] = app - t * apq;
        a[q * n + q] = aqq + t * apq;
        a[p * n + q] = a[q * n + p] = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a[r * n + p];
          const double arq = a[r * n + q];
          const double new_rp = arp - s * (arq + tau * arp);
          const double new_rq = arq + s * (arp - tau * arq);
          a[r * n + p] = a[p * n + r] = new_rp;
          a[r * n + q] = a[q * n + r] = new_rq;
        }
      }
    }
    ++sweeps;
    off = off_norm(a, n);
  }
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a[i * n + i];
  return {std::move(diag), sweeps, off, off <= tol};
}

void multiply(const GcdMatrix& M, std::span<const double> x, std::span<double> y) {
  const std::size_t n = M.order();
  for (std::size_t i = 0; i < n; ++i) {
    CompensatedSum s;
    for (std::size_t j = 0; j < n; ++j) s.add(M(i, j) * x[j]);
    y[i] = s.value();
  }
}

double dot(std::span<const double> x, std::span<const double> y) {
  CompensatedSum s;
  for (std::size_t i = 0; i < x.size(); ++i) s.add(x[i] * y[i]);
  return s.value();
}

void normalize(std::span<double> x) {
  const double norm = std::sqrt(dot(x, x));
  for (double& v : x) v /= norm;
}

// Lower-triangular Cholesky factor, row-major. Throws if M is not positive definite.
std::vector<double> cholesky(const GcdMatrix& M) {
  const std::size_t n = M.order();
  std::vector<double> L(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double d = M(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= L[j * n + k] * L[j * n + k];
    if (!(d > 0.0)) throw ConvergenceError("inverse iteration: matrix is not positive definite", 0.0);
    const double ljj = std::sqrt(d);
    L[j * n + j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = M(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= L[i * n + k] * L[j * n + k];
      L[i * n + j] = v / ljj;
    }
  }
  return L;
}

void cholesky_solve(const std::vector<double>& L, std::size_t n, std::span<double> x) {
  for (std::size_t i = 0; i < n; ++i) {
    double v = x[i];
    for (std::size_t k = 0; k < i; ++k) v -= L[i * n + k] * x[k];
    x[i] = v / L[i * n + i];
  }
  for (std::size_t i = n; i-- > 0;) {
    double v = x[i];
    for (std::size_t k = i + 1; k < n; ++k) v -= L[k * n + i] * x[k];
    x[i] = v / L[i * n + i];
  }
}

struct Extreme {
  double value;
  double residual;
  std::size_t steps;
};

// Power iteration (largest) or Cholesky-based inverse iteration (smallest),
// stopping once the Rayleigh residual is certified below tol.
Extreme iterate_extreme(const GcdMatrix& M, bool largest, double tol, std::size_t cap) {
  const std::size_t n = M.order();
  std::vector<double> x(n), y(n);
  // Deterministic start vector with no special alignment.
  CounterRng rng(0x5eed, largest ? 1 : 2);
  for (double& v : x) v = 0.5 + rng.uniform();
  normalize(x);
  std::vector<double> L;
  if (!largest) L = cholesky(M);
  double rho = 0.0, residual = INFINITY;
  for (std::size_t step = 1; step <= cap; ++step) {
    multiply(M, x, y);
    rho = dot(x, y);
    CompensatedSum r2;
    for (std::size_t i = 0; i < n; ++i) r2.add((y[i] - rho * x[i]) * (y[i] - rho * x[i]));
    residual = std::sqrt(r2.value());
    if (residual <= tol) return {rho, residual, step};
    if (largest) {
      x = y;
    } else {
      cholesky_solve(L, n, x);
    }
    normalize(x);
  }
  throw ConvergenceError("iterative eigensolver hit its iteration cap", residual);
}

}  // namespace

EigenResult eig_extremes(const GcdMatrix& M, const EigenOptions& options) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("eig_extremes: tol must be positive");
  EigenMethod method = options.method;
  if (method == EigenMethod::automatic) {
    method = M.order() > options.jacobi_max_order ? EigenMethod::iterative : EigenMethod::jacobi;
  }
  EigenResult result;
  result.method = method;
  if (method == EigenMethod::jacobi) {
    auto out = cyclic_jacobi(M, options.tol, options.sweep_cap);
    if (!out.converged) {
      throw ConvergenceError("Jacobi did not converge in " + std::to_string(out.sweeps) +
                                 " sweeps; off-diagonal norm " + std::to_string(out.residual),
                             out.residual);
    }
    auto [lo, hi] = std::minmax_element(out.diag.begin(), out.diag.end());
    result.lambda_min = *lo;
    result.lambda_max = *hi;
    result.iterations = out.sweeps;
    result.residual = out.residual;
    result.converged = true;
    return result;
  }
  const auto hi = iterate_extreme(M, true, options.tol, options.iteration_cap);
  const auto lo = iterate_extreme(M, false, options.tol, options.iteration_cap);
  result.lambda_max = hi.value;
  result.lambda_min = lo.value;
  result.iterations = hi.steps + lo.steps;
  result.residual = std::max(hi.residual, lo.residual);
  result.converged = true;
  return result;
}

std::vector<double> jacobi_eigenvalues(const GcdMatrix& M, double tol, std::size_t sweep_cap) {
  auto out = cyclic_jacobi(M, tol, sweep_cap);
  if (!out.converged) throw ConvergenceError("Jacobi did not converge", out.residual);
  std::sort(out.diag.begin(), out.diag.end());
  return out.diag;
}

std::pair<double, double> sandwich_bounds(const WeightSequence& t, std::size_t N) {
  if (N == 0) throw std::invalid_argument("sandwich_bounds: N must be positive");
  double lower = 1.0, upper = 1.0;
  for (std::size_t j = 1; j < N; ++j) {
    const double tj = t.value_or_zero(j);
    lower *= (1.0 - tj) / (1.0 + tj);
    upper *= (1.0 + tj) / (1.0 - tj);
  }
  return {lower, upper};
}

double theorem41_rhs(std::size_t N, double gamma_max) {
  if (N == 0) throw std::invalid_argument("theorem41_rhs: N must be positive");
  if (!(gamma_max >= 1.0)) throw std::invalid_argument("theorem41_rhs: gamma_max must be >= 1");
  const double e2 = std::exp(2.0);
  return (e2 + 1.0) * (std::floor(std::log(static_cast<double>(N))) + 2.0) * gamma_max;
}

double rayleigh_all_ones(const GcdMatrix& M) {
  CompensatedSum s;
  for (double v : M.entries()) s.add(v);
  return s.value() / static_cast<double>(M.order());
}

}  // namespace gcdlab
