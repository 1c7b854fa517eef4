#include "gcdlab/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "gcdlab/numeric.hpp"

namespace gcdlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double kernel_factor(double zeta, double angle) {
  const double c = std::cos(kTwoPi * angle);
  return (1.0 - zeta * zeta) / (1.0 - 2.0 * zeta * c + zeta * zeta);
}

// Term layout for fast evaluation of sum_j c_j z^{beta_j}.
struct Polynomial {
  std::size_t dims = 0;
  std::vector<std::uint32_t> max_exp;  // per dimension
  std::vector<double> coeffs;
  std::vector<std::vector<std::pair<std::size_t, std::uint32_t>>> terms;  // (dim index, exponent)
};

Polynomial layout(const IndexSet& B, std::span<const double> c) {
  if (c.size() != B.size()) throw std::invalid_argument("coefficient count must equal N");
  Polynomial p;
  p.dims = B.max_position();
  p.max_exp.assign(p.dims, 0);
  p.coeffs.assign(c.begin(), c.end());
  for (const auto& beta : B) {
    std::vector<std::pair<std::size_t, std::uint32_t>> term;
    for (const auto& [pos, exp] : beta.entries()) {
      term.emplace_back(pos - 1, exp);
      p.max_exp[pos - 1] = std::max(p.max_exp[pos - 1], exp);
    }
    p.terms.push_back(std::move(term));
  }
  return p;
}

// powers[d][e] = z_d^e at one point.
double poly_abs2(const Polynomial& p, const std::vector<std::vector<std::complex<double>>>& powers) {
  std::complex<double> acc = 0.0;
  for (std::size_t j = 0; j < p.terms.size(); ++j) {
    std::complex<double> m = p.coeffs[j];
    for (const auto& [d, e] : p.terms[j]) m *= powers[d][e];
    acc += m;
  }
  return std::norm(acc);
}

void fill_powers(std::vector<std::complex<double>>& row, double angle) {
  const std::complex<double> z = std::polar(1.0, kTwoPi * angle);
  row[0] = 1.0;
  for (std::size_t e = 1; e < row.size(); ++e) row[e] = row[e - 1] * z;
}

// Tensor trapezoid with n points per dimension; the outermost dimension is
// split across workers and reduced in index order.
double grid_integral(const Polynomial& p, std::span<const double> zeta, std::size_t n) {
  const std::size_t K = p.dims;
  std::vector<double> slices(n, 0.0);
  parallel_for(n, [&](std::size_t first) {
    std::vector<std::vector<std::complex<double>>> powers(K);
    for (std::size_t d = 0; d < K; ++d) powers[d].resize(p.max_exp[d] + 1);
    std::vector<std::size_t> idx(K, 0);
    idx[0] = first;
    std::vector<double> kernel(K);
    for (std::size_t d = 0; d < K; ++d) {
      const double a = static_cast<double>(idx[d]) / static_cast<double>(n);
      fill_powers(powers[d], a);
      kernel[d] = kernel_factor(zeta[d], a);
    }
    CompensatedSum s;
    for (;;) {
      double k = 1.0;
      for (double v : kernel) k *= v;
      s.add(poly_abs2(p, powers) * k);
      // Odometer over dimensions 1..K-1.
      std::size_t d = 1;
      for (; d < K; ++d) {
        if (++idx[d] < n) break;
        idx[d] = 0;
      }
      if (d == K) break;
      for (std::size_t r = 1; r <= d; ++r) {
        const double a = static_cast<double>(idx[r]) / static_cast<double>(n);
        fill_powers(powers[r], a);
        kernel[r] = kernel_factor(zeta[r], a);
      }
    }
    slices[first] = s.value();
  });
  return compensated_total(slices) / std::pow(static_cast<double>(n), static_cast<double>(K));
}

std::vector<double> zeta_for(const WeightSequence& t, std::size_t K) {
  std::vector<double> zeta(K);
  for (std::size_t d = 0; d < K; ++d) zeta[d] = t(d + 1);
  return zeta;
}

IdentityCheck run_grid(const Polynomial& p, std::span<const double> zeta, const GridQuadrature& g,
                       IdentityCheck check) {
  if (p.dims > 4) {
    throw std::invalid_argument("grid quadrature is limited to K <= 4 (got K = " +
                                std::to_string(p.dims) + "); use Monte Carlo");
  }
  for (double z : zeta) {
    if (z > 0.95) {
      throw std::invalid_argument(
          "grid quadrature refuses weights above 0.95 (kernel too peaked); use Monte Carlo");
    }
  }
  std::size_t n = 16;
  double previous = grid_integral(p, zeta, n / 2);
  double current = grid_integral(p, zeta, n);
  for (;;) {
    const double diff = std::abs(current - previous);
    if (diff <= g.budget * std::max(1.0, std::abs(current))) {
      check.converged = true;
      check.error_bound = diff;
      break;
    }
    const std::size_t next = 2 * n;
    if (next > g.max_points_per_dim ||
        std::pow(static_cast<double>(next), static_cast<double>(p.dims)) >
            static_cast<double>(g.max_total_points)) {
      check.converged = false;
      check.error_bound = diff;
      break;
    }
    n = next;
    previous = current;
    current = grid_integral(p, zeta, n);
  }
  check.estimate = current;
  check.points = n;
  return check;
}

// Wrapped Cauchy draw with density P(zeta, .) on the circle, as an angle fraction.
double kernel_angle(double zeta, double u) {
  const double theta =
      2.0 * std::atan((1.0 - zeta) / (1.0 + zeta) * std::tan(std::numbers::pi * (u - 0.5)));
  double a = theta / kTwoPi;
  if (a < 0.0) a += 1.0;
  return a >= 1.0 ? 0.0 : a;
}

IdentityCheck run_mc(const Polynomial& p, std::span<const double> zeta, const MonteCarlo& mc,
                     IdentityCheck check) {
  if (mc.samples < 2) throw std::invalid_argument("Monte Carlo needs at least two samples");
  if (mc.shard_size == 0) throw std::invalid_argument("shard size must be positive");
  const std::size_t K = p.dims;
  const std::size_t shards = (mc.samples + mc.shard_size - 1) / mc.shard_size;
  std::vector<double> sums(shards), squares(shards);
  parallel_for(shards, [&](std::size_t shard) {
    CounterRng rng(mc.seed, shard);
    std::vector<std::vector<std::complex<double>>> powers(K);
    for (std::size_t d = 0; d < K; ++d) powers[d].resize(p.max_exp[d] + 1);
    const std::size_t begin = shard * mc.shard_size;
    const std::size_t end = std::min(mc.samples, begin + mc.shard_size);
    CompensatedSum s, s2;
    for (std::size_t i = begin; i < end; ++i) {
      double weight = 1.0;
      for (std::size_t d = 0; d < K; ++d) {
        const double u = rng.uniform();
        if (mc.sampling == McSampling::uniform) {
          fill_powers(powers[d], u);
          weight *= kernel_factor(zeta[d], u);
        } else {
          fill_powers(powers[d], kernel_angle(zeta[d], u));
        }
      }
      const double f = poly_abs2(p, powers) * weight;
      s.add(f);
      s2.add(f * f);
    }
    sums[shard] = s.value();
    squares[shard] = s2.value();
  });
  const double n = static_cast<double>(mc.samples);
  const double mean = compensated_total(sums) / n;
  const double second = compensated_total(squares) / n;
  const double variance = std::max(0.0, (second - mean * mean) * n / (n - 1.0));
  check.estimate = mean;
  check.error_bound = std::sqrt(variance / n);
  check.points = mc.samples;
  check.converged = true;
  return check;
}

}  // namespace

TorusSample::TorusSample(std::vector<double> angles) : angles_(std::move(angles)) {
  for (double a : angles_) {
    if (!(a >= 0.0 && a < 1.0)) throw std::invalid_argument("torus angles must lie in [0,1)");
  }
}

double poisson_kernel(std::span<const double> zeta, const TorusSample& z) {
  if (zeta.size() != z.dimension()) throw std::invalid_argument("kernel dimension mismatch");
  double value = 1.0;
  for (std::size_t k = 0; k < zeta.size(); ++k) {
    if (!(zeta[k] >= 0.0 && zeta[k] < 1.0)) {
      throw std::invalid_argument("kernel point must lie in [0,1)^K");
    }
    value *= kernel_factor(zeta[k], z.angles()[k]);
  }
  return value;
}

double quadratic_form(const IndexSet& B, std::span<const double> c, const WeightSequence& t) {
  if (c.size() != B.size()) throw std::invalid_argument("coefficient count must equal N");
  CompensatedSum s;
  for (std::size_t k = 0; k < B.size(); ++k) {
    s.add(c[k] * c[k]);
    for (std::size_t l = k + 1; l < B.size(); ++l) {
      s.add(2.0 * weight_power(t, abs_diff(B[k], B[l])) * c[k] * c[l]);
    }
  }
  return s.value();
}

IdentityCheck verify_identity(const IndexSet& B, std::span<const double> c, const WeightSequence& t,
                              const IdentityMethod& method) {
  const Polynomial p = layout(B, c);
  IdentityCheck check;
  check.exact_form = quadratic_form(B, c, t);
  check.dimension = p.dims;
  const auto zeta = zeta_for(t, p.dims);
  if (p.dims == 0) {
    // Constant integrand; the empty kernel product is 1.
    const double s = compensated_total(c);
    check.estimate = s * s;
    check.points = 1;
    return check;
  }
  if (const auto* grid = std::get_if<GridQuadrature>(&method)) return run_grid(p, zeta, *grid, check);
  return run_mc(p, zeta, std::get<MonteCarlo>(method), check);
}

double kernel_mass(std::span<const double> zeta, std::size_t points_per_dim) {
  // |1|^2 against the kernel: a single empty monomial in K dimensions.
  Polynomial p;
  p.dims = zeta.size();
  p.max_exp.assign(p.dims, 0);
  p.coeffs = {1.0};
  p.terms = {{}};
  if (p.dims == 0) return 1.0;
  return grid_integral(p, zeta, points_per_dim);
}

double piden_partial(const WeightSequence& tau, const IndexSet& B, std::size_t degree_cap,
                     std::size_t dims, std::size_t state_budget) {
  const std::size_t K = dims ? dims : std::max<std::size_t>(1, B.max_position());
  if (K < B.max_position()) throw std::invalid_argument("piden_partial: dims below max R(beta)");
  const double states = std::pow(static_cast<double>(degree_cap + 1), static_cast<double>(K));
  if (states > static_cast<double>(state_budget)) {
    throw std::length_error("piden_partial: (cap+1)^K = " + std::to_string(states) +
                            " exceeds the state budget");
  }
  std::vector<double> w(K);
  for (std::size_t d = 0; d < K; ++d) w[d] = tau(d + 1);
  // Dense exponent vectors for the members.
  std::vector<std::vector<std::size_t>> members;
  for (const auto& beta : B) {
    std::vector<std::size_t> v(K, 0);
    for (const auto& [pos, exp] : beta.entries()) v[pos - 1] = exp;
    members.push_back(std::move(v));
  }
  // pow_table[d][e] = tau_d^e
  std::vector<std::vector<double>> pow_table(K, std::vector<double>(degree_cap + 1, 1.0));
  for (std::size_t d = 0; d < K; ++d) {
    for (std::size_t e = 1; e <= degree_cap; ++e) pow_table[d][e] = pow_table[d][e - 1] * w[d];
  }
  std::vector<std::size_t> beta(K, 0);
  CompensatedSum outer;
  for (;;) {
    CompensatedSum inner;
    for (const auto& m : members) {
      double term = 1.0;
      bool below = true;
      for (std::size_t d = 0; d < K && below; ++d) {
        if (m[d] > beta[d]) {
          below = false;
        } else {
          term *= pow_table[d][beta[d] - m[d]];
        }
      }
      if (below) inner.add(term);
    }
    const double v = inner.value();
    outer.add(v * v);
    std::size_t d = 0;
    for (; d < K; ++d) {
      if (++beta[d] <= degree_cap) break;
      beta[d] = 0;
    }
    if (d == K) break;
  }
  double prefactor = 1.0;
  for (double x : w) prefactor *= 1.0 - x * x;
  return prefactor * outer.value() / static_cast<double>(B.size());
}

}  // namespace gcdlab
