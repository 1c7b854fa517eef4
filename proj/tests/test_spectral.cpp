#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "gcdlab/gcdcore.hpp"
#include "gcdlab/spectral.hpp"
#include "gcdlab/weights.hpp"
#include "oracles.hpp"
#include "support.hpp"

using gcdlab::GcdMatrix;
using gcdlab::IndexSet;
using gcdlab::MultiIndex;
using gcdlab::WeightSequence;

TEST(BuildMatrix, Examples) {
  const auto M = gcdlab::build_matrix(IndexSet{MultiIndex{}, MultiIndex{{1, 1}}},
                                      WeightSequence::explicit_list({0.5}));
  EXPECT_EQ(M.order(), 2u);
  EXPECT_EQ(M(0, 0), 1.0);
  EXPECT_EQ(M(0, 1), 0.5);
  EXPECT_EQ(M(1, 0), 0.5);
  EXPECT_EQ(gcdlab::build_matrix(IndexSet{MultiIndex{{2, 2}}}, gcdlab::power_law(1.0))(0, 0), 1.0);
  const auto G = gcdlab::build_matrix(gcdlab::IntegerSequence({1, 2, 3, 6}), 1.0);
  EXPECT_NEAR(G(1, 3), 1.0 / 3.0, 1e-16);
  const auto H = gcdlab::build_matrix(gcdlab::factorize_all(gcdlab::IntegerSequence({1, 2, 3, 6})),
                                      gcdlab::power_law(1.0));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) ASSERT_NEAR(G(i, j), H(i, j), 1e-16);
  }
}

TEST(BuildMatrix, RejectsAsymmetricEntries) {
  EXPECT_THROW(GcdMatrix(2, {1, 0.5, 0.4, 1}, "test"), std::invalid_argument);
  EXPECT_THROW(GcdMatrix(2, {1, 0.5, 0.5}, "test"), std::invalid_argument);
}

TEST(BuildMatrix, CsvExport) {
  std::ostringstream os;
  GcdMatrix(2, {1, 0.5, 0.5, 1}, "test").write_csv(os);
  EXPECT_EQ(os.str(), "1,0.5\n0.5,1\n");
}

TEST(EigExtremes, Examples) {
  const auto two = gcdlab::eig_extremes(GcdMatrix(2, {1, 0.5, 0.5, 1}, "test"));
  EXPECT_NEAR(two.lambda_min, 0.5, 1e-14);
  EXPECT_NEAR(two.lambda_max, 1.5, 1e-14);
  const auto id = gcdlab::eig_extremes(GcdMatrix::identity(7));
  EXPECT_EQ(id.lambda_min, 1.0);
  EXPECT_EQ(id.lambda_max, 1.0);
  const auto G = gcdlab::build_matrix(gcdlab::IntegerSequence({1, 2, 3, 6}), 1.0);
  const auto ref = oracle::charpoly_extremes(support::dense(G));
  const auto e = gcdlab::eig_extremes(G);
  EXPECT_NEAR(e.lambda_min, static_cast<double>(ref.first), 1e-9);
  EXPECT_NEAR(e.lambda_max, static_cast<double>(ref.second), 1e-9);
}

TEST(EigExtremes, IterativeAgreesWithJacobi) {
  support::Rng rng(31);
  for (int i = 0; i < 10; ++i) {
    const auto B = support::random_index_set(rng, 20, 60, 5, 3);
    const auto t = WeightSequence::explicit_list(support::random_weights(rng, 5, 0.05, 0.8));
    const auto M = gcdlab::build_matrix(B, t);
    gcdlab::EigenOptions j, it;
    j.method = gcdlab::EigenMethod::jacobi;
    it.method = gcdlab::EigenMethod::iterative;
    const auto a = gcdlab::eig_extremes(M, j);
    const auto b = gcdlab::eig_extremes(M, it);
    EXPECT_EQ(b.method, gcdlab::EigenMethod::iterative);
    ASSERT_NEAR(a.lambda_min, b.lambda_min, 1e-8 * a.lambda_max);
    ASSERT_NEAR(a.lambda_max, b.lambda_max, 1e-8 * a.lambda_max);
  }
}

TEST(EigExtremes, LargeOrderUsesFallback) {
  const auto seq = gcdlab::first_integers(600);
  const auto M = gcdlab::build_matrix(seq, 0.9);
  const auto e = gcdlab::eig_extremes(M);
  EXPECT_EQ(e.method, gcdlab::EigenMethod::iterative);
  EXPECT_TRUE(e.converged);
  const auto ref = oracle::power_extremes(support::dense(M), 3000);
  EXPECT_NEAR(e.lambda_max, static_cast<double>(ref.second), 1e-8 * e.lambda_max);
  EXPECT_NEAR(e.lambda_min, static_cast<double>(ref.first), 1e-8 * e.lambda_max);
}

TEST(EigExtremes, ReportsNonConvergence) {
  support::Rng rng(32);
  const auto B = support::random_index_set(rng, 40, 40, 5, 3);
  const auto M = gcdlab::build_matrix(B, WeightSequence::explicit_list({0.8, 0.7, 0.6, 0.5, 0.4}));
  gcdlab::EigenOptions opts;
  opts.method = gcdlab::EigenMethod::jacobi;
  opts.sweep_cap = 1;
  try {
    gcdlab::eig_extremes(M, opts);
    FAIL() << "expected ConvergenceError";
  } catch (const gcdlab::ConvergenceError& e) {
    EXPECT_GT(e.residual(), opts.tol);
  }
}

TEST(JacobiEigenvalues, TraceAndOrder) {
  const auto M = gcdlab::build_matrix(gcdlab::first_integers(30), 0.75);
  const auto ev = gcdlab::jacobi_eigenvalues(M);
  ASSERT_EQ(ev.size(), 30u);
  EXPECT_TRUE(std::is_sorted(ev.begin(), ev.end()));
  double trace = 0;
  for (double x : ev) trace += x;
  EXPECT_NEAR(trace, 30.0, 1e-11);
}

TEST(Sandwich, Examples) {
  const auto [lo2, hi2] = gcdlab::sandwich_bounds(WeightSequence::explicit_list({0.5}), 2);
  EXPECT_NEAR(lo2, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(hi2, 3.0, 1e-15);
  const auto [lo1, hi1] = gcdlab::sandwich_bounds(WeightSequence::explicit_list({0.5}), 1);
  EXPECT_EQ(lo1, 1.0);
  EXPECT_EQ(hi1, 1.0);
  const auto [lo3, hi3] = gcdlab::sandwich_bounds(gcdlab::power_law(1.0), 3);
  EXPECT_NEAR(lo3, 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(hi3, 6.0, 1e-14);
}

TEST(SpectralCeiling, Examples) {
  const double e2 = std::exp(2.0) + 1.0;
  EXPECT_NEAR(gcdlab::theorem41_rhs(1, 1.0), 2 * e2, 1e-12);
  EXPECT_NEAR(gcdlab::theorem41_rhs(1, 1.0), 16.778, 1e-3);
  EXPECT_NEAR(gcdlab::theorem41_rhs(21, 1.0), 5 * e2, 1e-12);
  EXPECT_NEAR(gcdlab::theorem41_rhs(2, 2.0), 4 * e2, 1e-12);
  EXPECT_THROW(gcdlab::theorem41_rhs(2, 0.5), std::invalid_argument);
}

TEST(Rayleigh, Examples) {
  EXPECT_DOUBLE_EQ(gcdlab::rayleigh_all_ones(GcdMatrix(2, {1, 0.5, 0.5, 1}, "test")), 1.5);
  EXPECT_DOUBLE_EQ(gcdlab::rayleigh_all_ones(GcdMatrix::identity(9)), 1.0);
  EXPECT_NEAR(gcdlab::rayleigh_all_ones(gcdlab::build_matrix(gcdlab::IntegerSequence({1, 2, 3, 6}), 1.0)), 2.0,
              1e-15);
}

TEST(Spectral, OracleAgreementSmallOrders) {
  support::Rng rng(33);
  for (int i = 0; i < 100; ++i) {
    const auto B = support::random_index_set(rng, 1, 4, 3, 3);
    const auto w = support::random_weights(rng, 3, 0.01, 0.9);
    const auto M = gcdlab::build_matrix(B, WeightSequence::explicit_list(w));
    const auto ref = oracle::charpoly_extremes(support::dense(M));
    const auto e = gcdlab::eig_extremes(M);
    ASSERT_NEAR(e.lambda_min, static_cast<double>(ref.first), 1e-9);
    ASSERT_NEAR(e.lambda_max, static_cast<double>(ref.second), 1e-9);
  }
}
