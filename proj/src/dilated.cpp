#include "gcdlab/dilated.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "gcdlab/numeric.hpp"

namespace gcdlab {

double sawtooth(double x) { return x - std::floor(x) - 0.5; }

DilatedSystem::DilatedSystem(IntegerSequence seq, std::vector<double> coeffs)
    : seq_(std::move(seq)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != seq_.size()) {
    throw std::invalid_argument("dilated system: " + std::to_string(coeffs_.size()) +
                                " coefficients for " + std::to_string(seq_.size()) + " terms");
  }
}

double DilatedSystem::coeff_energy() const {
  CompensatedSum s;
  for (double c : coeffs_) s.add(c * c);
  return s.value();
}

DilatedSystem DilatedSystem::prefix(std::size_t M) const {
  if (M == 0 || M > size()) throw std::out_of_range("prefix length out of range");
  std::vector<std::uint64_t> n(seq_.values().begin(), seq_.values().begin() + M);
  std::vector<double> c(coeffs_.begin(), coeffs_.begin() + M);
  return DilatedSystem(IntegerSequence(std::move(n)), std::move(c));
}

double franel_landau(std::uint64_t m, std::uint64_t n) {
  if (m == 0 || n == 0) throw std::invalid_argument("franel_landau: arguments must be positive");
  const double g = static_cast<double>(std::gcd(m, n));
  return (g / static_cast<double>(m)) * (g / static_cast<double>(n)) / 12.0;
}

double sawtooth_l2_sq(const DilatedSystem& sys) {
  const auto& n = sys.sequence().values();
  const auto c = sys.coeffs();
  CompensatedSum s;
  for (std::size_t k = 0; k < n.size(); ++k) {
    s.add(c[k] * c[k] / 12.0);
    for (std::size_t l = k + 1; l < n.size(); ++l) s.add(2.0 * c[k] * c[l] * franel_landau(n[k], n[l]));
  }
  return s.value();
}

namespace {

// sum_{j >= n} j^{-p} for p > 1 by Euler-Maclaurin; `bound` receives the
// magnitude of the first omitted correction.
double zeta_tail(double n, double p, double& bound) {
  const double np = std::pow(n, -p);
  double sum = n * np / (p - 1.0) + np / 2.0;
  // B_{2k}/(2k)! * (p)_{2k-1} * n^{-p-2k+1}
  static constexpr double kCoeff[] = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0};
  double rising = p;  // (p)(p+1)...(p+2k-2)
  double npow = np / n;
  for (int k = 0; k < 3; ++k) {
    sum += kCoeff[k] * rising * npow;
    rising *= (p + 2 * k + 1) * (p + 2 * k + 2);
    npow /= n * n;
  }
  bound = std::abs(kCoeff[3] * rising * npow);
  return sum;
}

}  // namespace

ResonanceValue resonance_sum(std::uint64_t v, std::uint64_t w, std::uint64_t J, double s) {
  if (v == 0 || w == 0) throw std::invalid_argument("resonance_sum: v and w must be positive");
  if (v > w) throw std::invalid_argument("resonance_sum: requires v <= w");
  if (!(s > 0.5)) throw std::invalid_argument("resonance_sum: requires s > 1/2");
  const std::uint64_t g = std::gcd(v, w);
  ResonanceValue out;
  // j2 = j v / g >= J + 1 is the binding constraint since v <= w.
  out.j_star = std::max<std::uint64_t>(1, ((J + 1) * g + v - 1) / v);
  const double p = 2.0 * s;
  constexpr std::uint64_t kDirect = 4096;
  std::vector<double> terms(kDirect);
  for (std::uint64_t i = 0; i < kDirect; ++i) {
    terms[i] = std::pow(static_cast<double>(out.j_star + i), -p);
  }
  CompensatedSum series;
  double bound = 0.0;
  series.add(zeta_tail(static_cast<double>(out.j_star + kDirect), p, bound));
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) series.add(*it);
  const double scale = std::pow((static_cast<double>(g) / static_cast<double>(v)) *
                                    (static_cast<double>(g) / static_cast<double>(w)),
                                s);
  out.value = scale * series.value();
  out.tail_bound = scale * bound + 4.0 * std::numeric_limits<double>::epsilon() * out.value;
  return out;
}

namespace {

struct Fraction {
  std::uint64_t num;
  std::uint64_t den;
};

bool less(const Fraction& a, const Fraction& b) {
  return static_cast<unsigned __int128>(a.num) * b.den < static_cast<unsigned __int128>(b.num) * a.den;
}

bool equal(const Fraction& a, const Fraction& b) { return a.num == b.num && a.den == b.den; }

double as_double(const Fraction& f) { return static_cast<double>(f.num) / static_cast<double>(f.den); }

std::vector<Fraction> breakpoints(const std::vector<std::uint64_t>& n) {
  std::vector<Fraction> pts;
  for (auto nk : n) {
    for (std::uint64_t j = 0; j <= nk; ++j) {
      const std::uint64_t g = std::gcd(j, nk);
      pts.push_back(j == 0 ? Fraction{0, 1} : Fraction{j / g, nk / g});
    }
  }
  std::sort(pts.begin(), pts.end(), less);
  pts.erase(std::unique(pts.begin(), pts.end(), equal), pts.end());
  return pts;
}

// floor(n * (a + b) / 2) for fractions a < b, exactly.
std::uint64_t floor_mid(std::uint64_t n, const Fraction& a, const Fraction& b) {
  using u128 = unsigned __int128;
  const u128 num = static_cast<u128>(n) * (static_cast<u128>(a.num) * b.den + static_cast<u128>(b.num) * a.den);
  const u128 den = static_cast<u128>(2) * a.den * b.den;
  return static_cast<std::uint64_t>(num / den);
}

struct Line {
  double slope;
  double intercept;  // value at the left end of the cell
  double at(double u) const { return intercept + slope * u; }
};

double square_integral(const Line& l, double u0, double u1) {
  const double f0 = l.at(u0), f1 = l.at(u1), fm = l.at(0.5 * (u0 + u1));
  return (u1 - u0) * (f0 * f0 + 4.0 * fm * fm + f1 * f1) / 6.0;
}

// Integral over [0, h] of (upper envelope of lines)^2.
double envelope_square_integral(std::vector<Line>& lines, double h) {
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    return a.slope < b.slope || (a.slope == b.slope && a.intercept < b.intercept);
  });
  std::vector<Line> hull;
  auto cross = [](const Line& a, const Line& b) { return (a.intercept - b.intercept) / (b.slope - a.slope); };
  for (const auto& l : lines) {
    if (!hull.empty() && hull.back().slope == l.slope) hull.pop_back();  // l has the larger intercept
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], l) <= cross(hull[hull.size() - 2], hull.back())) {
      hull.pop_back();
    }
    hull.push_back(l);
  }
  CompensatedSum total;
  double left = 0.0;
  for (std::size_t i = 0; i < hull.size() && left < h; ++i) {
    double right = i + 1 < hull.size() ? cross(hull[i], hull[i + 1]) : h;
    right = std::min(right, h);
    if (right > left) {
      total.add(square_integral(hull[i], left, right));
      left = right;
    }
  }
  return total.value();
}

}  // namespace

MaximalValue maximal_l2_sq(const DilatedSystem& sys, const MaximalOptions& options) {
  const auto& n = sys.sequence().values();
  const auto c = sys.coeffs();
  const std::size_t N = n.size();
  if (N > options.max_terms) {
    throw std::length_error("maximal_l2_sq: " + std::to_string(N) + " terms exceed the exact budget of " +
                            std::to_string(options.max_terms) + "; use the grid estimator");
  }
  double cell_estimate = 0.0;
  for (auto nk : n) cell_estimate += static_cast<double>(nk);
  if (cell_estimate > static_cast<double>(options.max_cells)) {
    throw std::length_error("maximal_l2_sq: too many cells; use the grid estimator");
  }
  const auto pts = breakpoints(n);
  const std::size_t cells = pts.size() - 1;
  constexpr std::size_t kBlock = 256;
  const std::size_t blocks = (cells + kBlock - 1) / kBlock;
  std::vector<double> partial(blocks, 0.0);
  parallel_for(blocks, [&](std::size_t b) {
    std::vector<Line> lines(2 * N);
    CompensatedSum block_sum;
    for (std::size_t cell = b * kBlock; cell < std::min(cells, (b + 1) * kBlock); ++cell) {
      const Fraction& lo = pts[cell];
      const Fraction& hi = pts[cell + 1];
      const double a = as_double(lo);
      const double h = as_double(hi) - a;
      double slope = 0.0, value = 0.0;
      for (std::size_t k = 0; k < N; ++k) {
        // On this cell phi(n_k x) = n_k (x - a) + (n_k a - f_k - 1/2).
        const double fk = static_cast<double>(floor_mid(n[k], lo, hi));
        const double nk = static_cast<double>(n[k]);
        slope += c[k] * nk;
        value += c[k] * (nk * a - fk - 0.5);
        lines[2 * k] = {slope, value};
        lines[2 * k + 1] = {-slope, -value};
      }
      block_sum.add(envelope_square_integral(lines, h));
    }
    partial[b] = block_sum.value();
  });
  return {compensated_total(partial), cells};
}

double maximal_l2_grid(const DilatedSystem& sys, std::size_t points) {
  if (points == 0) throw std::invalid_argument("maximal_l2_grid: need at least one point");
  const auto& n = sys.sequence().values();
  const auto c = sys.coeffs();
  constexpr std::size_t kBlock = 4096;
  const std::size_t blocks = (points + kBlock - 1) / kBlock;
  std::vector<double> partial(blocks, 0.0);
  parallel_for(blocks, [&](std::size_t b) {
    CompensatedSum s;
    for (std::size_t i = b * kBlock; i < std::min(points, (b + 1) * kBlock); ++i) {
      const double x = (static_cast<double>(i) + 0.5) / static_cast<double>(points);
      double partial_sum = 0.0, best = 0.0;
      for (std::size_t k = 0; k < n.size(); ++k) {
        partial_sum += c[k] * sawtooth(static_cast<double>(n[k]) * x);
        best = std::max(best, std::abs(partial_sum));
      }
      s.add(best * best);
    }
    partial[b] = s.value();
  });
  return compensated_total(partial) / static_cast<double>(points);
}

ChRatioRow ch_ratio(const DilatedSystem& sys, const MaximalOptions& options) {
  if (sys.size() < 3) throw std::invalid_argument("ch_ratio: requires N >= 3");
  ChRatioRow row;
  row.N = sys.size();
  row.maximal_l2_sq = maximal_l2_sq(sys, options).value;
  row.coeff_energy = sys.coeff_energy();
  const double ll = std::log(std::log(static_cast<double>(row.N)));
  row.ratio_to_loglog4 = row.maximal_l2_sq / (row.coeff_energy * std::pow(ll, 4.0));
  row.lower_witness = sawtooth_l2_sq(sys) / row.coeff_energy;
  return row;
}

double cosine_partial_sum(std::span<const double> a, double x) {
  CompensatedSum s;
  for (std::size_t j = 0; j < a.size(); ++j) {
    s.add(a[j] * std::cos(2.0 * std::numbers::pi * static_cast<double>(j + 1) * x));
  }
  return s.value();
}

}  // namespace gcdlab
