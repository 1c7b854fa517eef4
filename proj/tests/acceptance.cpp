// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gcdlab/bounds.hpp"
#include "gcdlab/canonical.hpp"
#include "gcdlab/dilated.hpp"
#include "gcdlab/gcdcore.hpp"
#include "gcdlab/poisson.hpp"
#include "gcdlab/spectral.hpp"
#include "gcdlab/weights.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace gcdlab;
using support::Rng;

namespace {

struct Verdict {
  bool pass = true;
  std::size_t cases = 0;
  double worst = 0.0;
  std::string note;

  void check(bool ok, double discrepancy, const std::string& what) {
    ++cases;
    if (std::isfinite(discrepancy)) worst = std::max(worst, discrepancy);
    if (!ok && pass) {
      pass = false;
      note = "first failure: " + what;
    }
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// 1. square-free family: brute force against the closed form.
Verdict squarefree_closed_form_check() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  for (unsigned r = 1; r <= 10; ++r) {
    const auto seq = extremal_squarefree(r);
    for (double alpha : {0.6, 0.75, 0.9, 1.0}) {
      const double d = support::rel_diff(gcd_sum(seq, alpha, false), squarefree_closed_form(r, alpha));
      v.check(d <= 1e-10, d, "r=" + std::to_string(r) + " alpha=" + fmt(alpha));
    }
  }
  const std::chrono::duration<double> secs = std::chrono::steady_clock::now() - start;
  v.check(secs.count() < 60.0, 0.0, "runtime " + fmt(secs.count()) + " s");
  v.note += (v.note.empty() ? "" : "; ") + std::string("runtime ") + fmt(secs.count()) + " s";
  return v;
}

// 2. gcd_sum against s_form over factorizations.
Verdict gcd_sum_vs_s_form() {
  Verdict v;
  Rng rng(2002);
  for (int i = 0; i < 500; ++i) {
    const IntegerSequence seq(support::random_values(rng, 1, 64, 1000000));
    const auto B = factorize_all(seq);
    for (double alpha : {0.25, 0.5, 0.75, 1.0}) {
      const double d = support::rel_diff(gcd_sum(seq, alpha, true), s_form(power_law(alpha), B));
      v.check(d <= 1e-12, d, "instance " + std::to_string(i) + " alpha=" + fmt(alpha));
    }
  }
  return v;
}

// 3. canonical reduction postconditions.
Verdict canonical_properties() {
  Verdict v;
  Rng rng(3003);
  int done = 0;
  while (done < 1000) {
    const auto B = support::random_index_set(rng, 1, 10, 6, 3);
    const auto w = support::random_weights(rng, 6, 0.02, 0.98);
    const auto t = WeightSequence::explicit_list(w);
    if (kappa(t) >= B.size()) continue;
    ++done;
    const auto r = canonical_reduce(B, t);
    const double before = s_form(t, B);
    const double after = s_form(eta(t), r.reduced);
    const bool ok = is_kappa_canonical(r.reduced, r.kappa) && r.reduced.size() == B.size() &&
                    r.reduced.support_union().size() + 1 <= B.size() && after >= before - 1e-12;
    v.check(ok, std::max(0.0, before - after), "instance " + std::to_string(done));
  }
  return v;
}

// 4. Poisson integral identity by grid quadrature and by Monte Carlo.
Verdict poisson_identity() {
  Verdict v;
  Rng rng(4004);
  std::normal_distribution<double> normal;
  for (int i = 0; i < 50; ++i) {
    const auto B = support::random_index_set(rng, 1, 6, 3, 3);
    const auto w = support::random_weights(rng, 3, 0.05, 0.8);
    std::vector<double> c(B.size());
    for (double& x : c) x = normal(rng);
    const auto r = verify_identity(B, c, WeightSequence::explicit_list(w), GridQuadrature{});
    const double d = support::rel_diff(r.estimate, r.exact_form);
    v.check(d <= 1e-8, d, "grid instance " + std::to_string(i));
  }
  double worst_se = 0.0;
  for (int i = 0; i < 10; ++i) {
    IndexSet B = support::random_index_set(rng, 2, 6, 4, 3);
    while (B.max_position() < 4) B = support::random_index_set(rng, 2, 6, 4, 3);
    const auto w = support::random_weights(rng, 4, 0.05, 0.8);
    std::vector<double> c(B.size());
    for (double& x : c) x = normal(rng);
    MonteCarlo mc;
    mc.samples = 1000000;
    mc.seed = 4004 + static_cast<std::uint64_t>(i);
    const auto r = verify_identity(B, c, WeightSequence::explicit_list(w), mc);
    const double se = std::abs(r.estimate - r.exact_form) / r.error_bound;
    worst_se = std::max(worst_se, se);
    v.check(r.dimension == 4 && se <= 4.0, 0.0, "MC instance " + std::to_string(i) + " at " + fmt(se) + " SE");
  }
  v.note += (v.note.empty() ? "" : "; ") + std::string("worst MC deviation ") + fmt(worst_se) + " SE";
  return v;
}

// 5. eigenvalue sandwich.
Verdict sandwich() {
  Verdict v;
  Rng rng(5005);
  for (int i = 0; i < 200; ++i) {
    const auto B = support::random_index_set(rng, 1, 64, 6, 3);
    const auto w = support::random_weights(rng, std::max<std::size_t>(B.size(), 6), 0.01, 0.9);
    const auto t = WeightSequence::explicit_list(w);
    const auto M = build_matrix(B, t);
    const auto e = eig_extremes(M);
    const auto [lo, hi] = sandwich_bounds(t, B.size());
    const double ray = rayleigh_all_ones(M);
    const bool ok = e.lambda_min >= lo - 1e-8 && e.lambda_max <= hi + 1e-8 && e.lambda_min > 0 &&
                    e.lambda_max >= ray - 1e-12 && ray >= 1.0 - 1e-15;
    v.check(ok, std::max({0.0, lo - e.lambda_min, e.lambda_max - hi, ray - e.lambda_max}),
            "instance " + std::to_string(i));
  }
  return v;
}

// 6. eigensolver against characteristic polynomial and power-method oracles.
Verdict eigensolver() {
  Verdict v;
  Rng rng(6006);
  for (int i = 0; i < 100; ++i) {
    const auto B = support::random_index_set(rng, 1, 4, 3, 3);
    const auto w = support::random_weights(rng, 3, 0.01, 0.9);
    const auto M = build_matrix(B, WeightSequence::explicit_list(w));
    const auto e = eig_extremes(M);
    const auto [lo, hi] = oracle::charpoly_extremes(support::dense(M));
    const double d = std::max(std::abs(e.lambda_min - static_cast<double>(lo)),
                              std::abs(e.lambda_max - static_cast<double>(hi)));
    v.check(d <= 1e-9, d, "charpoly instance " + std::to_string(i));
  }
  for (int i = 0; i < 40; ++i) {
    const auto B = support::random_index_set(rng, 5, 64, 6, 3);
    const auto w = support::random_weights(rng, 6, 0.01, 0.9);
    const auto M = build_matrix(B, WeightSequence::explicit_list(w));
    const auto e = eig_extremes(M);
    const auto [lo, hi] = oracle::power_extremes(support::dense(M), 10000);
    const double d = std::max(std::abs(e.lambda_min - static_cast<double>(lo)),
                              std::abs(e.lambda_max - static_cast<double>(hi)));
    v.check(d <= 1e-9, d, "power-method instance " + std::to_string(i) + " N=" + std::to_string(B.size()));
  }
  return v;
}

// 7. Franel-Landau closed form against exact piecewise integration.
Verdict franel_landau_check() {
  Verdict v;
  for (std::uint64_t m = 1; m <= 100; ++m) {
    for (std::uint64_t n = m; n <= 100; ++n) {
      const double d = std::abs(franel_landau(m, n) - static_cast<double>(oracle::sawtooth_covariance(m, n)));
      v.check(d <= 1e-12, d, "m=" + std::to_string(m) + " n=" + std::to_string(n));
    }
  }
  return v;
}

// 8. resonance closed form against enumeration up to 10^5 plus a tail bound.
Verdict resonance_check() {
  Verdict v;
  std::vector<std::uint64_t> Js(21);
  for (std::uint64_t J = 0; J <= 20; ++J) Js[J] = J;
  auto compare = [&](std::uint64_t a, std::uint64_t b, const std::vector<std::uint64_t>& js, double s) {
    const auto brute = oracle::resonance(a, b, js, s);
    for (std::size_t i = 0; i < js.size(); ++i) {
      const auto r = resonance_sum(a, b, js[i], s);
      const double lo = static_cast<double>(brute[i].partial);
      const double hi = static_cast<double>(brute[i].partial + brute[i].tail);
      const double slack = 1e-13 * std::max(1.0, lo);
      const bool ok = r.value >= lo - slack && r.value <= hi + slack;
      v.check(ok, std::max({0.0, lo - r.value, r.value - hi}),
              "v=" + std::to_string(a) + " w=" + std::to_string(b) + " J=" + std::to_string(js[i]) +
                  " s=" + fmt(s));
    }
  };
  for (std::uint64_t a = 1; a <= 50; ++a) {
    for (std::uint64_t b = a; b <= 50; ++b) compare(a, b, Js, 1.0);
  }
  Rng rng(8008);
  std::uniform_int_distribution<std::uint64_t> vw(1, 50), J(0, 20);
  for (int i = 0; i < 20; ++i) {
    auto a = vw(rng), b = vw(rng);
    if (a > b) std::swap(a, b);
    const std::vector<std::uint64_t> js{J(rng)};
    for (double s : {0.8, 0.9}) compare(a, b, js, s);
  }
  return v;
}

// 9. exact maximal norm against a 10^6-point grid.
Verdict maximal_check() {
  Verdict v;
  Rng rng(9009);
  std::normal_distribution<double> normal;
  for (int i = 0; i < 50; ++i) {
    const auto n = support::random_values(rng, 1, 16, 40);
    std::vector<double> c(n.size());
    double energy = 0;
    for (double& x : c) {
      x = normal(rng);
      energy += x * x;
    }
    for (double& x : c) x /= std::sqrt(energy);
    const DilatedSystem sys{IntegerSequence(n), c};
    const double exact = maximal_l2_sq(sys).value;
    const double grid = static_cast<double>(oracle::maximal_grid(n, support::widen(c), 1000000));
    const double d = std::abs(exact - grid);
    v.check(d <= 1e-4 && sawtooth_l2_sq(sys) <= exact, d, "system " + std::to_string(i));
  }
  return v;
}

// 10. desk-scale lower-bound shapes.
Verdict lower_shapes() {
  Verdict v;
  double margin = INFINITY;
  for (double alpha : {0.6, 0.75, 0.9}) {
    for (unsigned r = 4; r <= 10; ++r) {
      const auto seq = extremal_squarefree(r);
      const double N = static_cast<double>(seq.size());
      const double observed = gcd_sum(seq, alpha, true);
      const double shape = squarefree_lower_shape(alpha, N, 0.1);
      margin = std::min(margin, observed / shape);
      v.check(shape <= observed, std::max(0.0, shape - observed),
              "square-free alpha=" + fmt(alpha) + " N=" + fmt(N));
    }
  }
  for (double alpha : {0.25, 0.4}) {
    for (std::size_t N : {100u, 300u, 1000u, 3000u, 10000u}) {
      const double observed = gcd_sum(extremal_primes(N), alpha, true);
      const double shape = primes_lower_shape(alpha, static_cast<double>(N), 0.1);
      margin = std::min(margin, observed / shape);
      v.check(shape <= observed, std::max(0.0, shape - observed),
              "primes alpha=" + fmt(alpha) + " N=" + std::to_string(N));
    }
  }
  v.note += (v.note.empty() ? "" : "; ") + std::string("smallest observed/shape ratio ") + fmt(margin);
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"square-free closed form vs brute force (rel 1e-10)", squarefree_closed_form_check},
      {"gcd_sum equals s_form on 500 random sequences (rel 1e-12)", gcd_sum_vs_s_form},
      {"canonical reduction properties on 1000 random sets", canonical_properties},
      {"Poisson identity: grid rel 1e-8, Monte Carlo within 4 SE", poisson_identity},
      {"eigenvalue sandwich on 200 random matrices (1e-8)", sandwich},
      {"eigensolver vs dense oracles (1e-9)", eigensolver},
      {"Franel-Landau vs piecewise integration, m <= n <= 100 (1e-12)", franel_landau_check},
      {"resonance closed form vs enumeration plus tail", resonance_check},
      {"maximal norm vs 10^6-point grid (1e-4)", maximal_check},
      {"lower-bound shapes below observed sums", lower_shapes},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.note = std::string("exception: ") + e.what();
    }
    const std::chrono::duration<double> secs = std::chrono::steady_clock::now() - start;
    if (!v.pass) ++failures;
    std::printf("%s %2zu %s: %zu cases, worst %s, %.2f s%s%s\n", v.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), v.cases, fmt(v.worst).c_str(), secs.count(),
                v.note.empty() ? "" : "; ", v.note.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
