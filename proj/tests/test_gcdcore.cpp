#include <gtest/gtest.h>

#include <cmath>

#include "gcdlab/gcdcore.hpp"
#include "gcdlab/numeric.hpp"
#include "gcdlab/weights.hpp"
#include "oracles.hpp"
#include "support.hpp"

using gcdlab::IndexSet;
using gcdlab::IntegerSequence;
using gcdlab::MultiIndex;

TEST(GcdSum, Examples) {
  EXPECT_DOUBLE_EQ(gcdlab::gcd_sum(IntegerSequence({5}), 1.0, true), 1.0);
  EXPECT_DOUBLE_EQ(gcdlab::gcd_sum(IntegerSequence({1, 2, 3, 6}), 1.0, true), 2.0);
  EXPECT_DOUBLE_EQ(gcdlab::gcd_sum(IntegerSequence({1, 2, 3, 6}), 1.0, false), 8.0);
  EXPECT_NEAR(gcdlab::gcd_sum(IntegerSequence({2, 3, 5}), 1.0, true), 11.0 / 9.0, 1e-15);
}

TEST(GcdSum, MatchesBruteForce) {
  support::Rng rng(3);
  for (int i = 0; i < 60; ++i) {
    const auto v = support::random_values(rng, 1, 80, 5000);
    for (double alpha : {0.3, 0.5, 0.8, 1.0}) {
      const double lib = gcdlab::gcd_sum(IntegerSequence(v), alpha, true);
      const double ref = static_cast<double>(oracle::gcd_sum(v, alpha, true));
      ASSERT_LT(support::rel_diff(lib, ref), 1e-13);
    }
  }
}

TEST(GcdSum, RejectsAlphaOutsideUnitInterval) {
  EXPECT_THROW(gcdlab::gcd_sum(IntegerSequence({1, 2}), 0.0, true), std::invalid_argument);
  EXPECT_THROW(gcdlab::gcd_sum(IntegerSequence({1, 2}), 1.5, true), std::invalid_argument);
}

TEST(GcdSum, IndependentOfThreadCount) {
  const auto seq = gcdlab::first_integers(700);
  gcdlab::set_parallelism(1);
  const double one = gcdlab::gcd_sum(seq, 0.6, false);
  gcdlab::set_parallelism(5);
  const double five = gcdlab::gcd_sum(seq, 0.6, false);
  gcdlab::set_parallelism(0);
  EXPECT_EQ(one, five);
}

TEST(IntegerSequence, Validation) {
  EXPECT_THROW(IntegerSequence({}), std::invalid_argument);
  EXPECT_THROW(IntegerSequence({0, 1}), std::invalid_argument);
  EXPECT_THROW(IntegerSequence({2, 2}), std::invalid_argument);
  EXPECT_THROW(IntegerSequence({3, 2}), std::invalid_argument);
  EXPECT_EQ(IntegerSequence::from_unsorted({6, 1, 3}).values(), (std::vector<std::uint64_t>{1, 3, 6}));
}

TEST(IndexSet, Validation) {
  EXPECT_THROW(IndexSet(std::vector<MultiIndex>{}), std::invalid_argument);
  EXPECT_THROW((IndexSet{MultiIndex{{1, 1}}, MultiIndex{{1, 1}}}), std::invalid_argument);
  const IndexSet B{MultiIndex{{1, 1}}, MultiIndex{{3, 2}}, MultiIndex{}};
  EXPECT_EQ(B.size(), 3u);
  EXPECT_EQ(B.support_union(), (std::vector<MultiIndex::Position>{1, 3}));
  EXPECT_EQ(B.max_position(), 3u);
  EXPECT_TRUE(B.contains(MultiIndex{}));
  EXPECT_FALSE(B.contains(MultiIndex{{2, 1}}));
}

TEST(SForm, Examples) {
  const auto t = gcdlab::WeightSequence::explicit_list({0.4});
  EXPECT_DOUBLE_EQ(gcdlab::s_form(t, IndexSet{MultiIndex{{1, 3}}}), 1.0);
  EXPECT_DOUBLE_EQ(gcdlab::s_form(t, IndexSet{MultiIndex{}, MultiIndex{{1, 1}}}), 1.4);
  const auto B = gcdlab::factorize_all(IntegerSequence({1, 2, 3, 6}));
  EXPECT_NEAR(gcdlab::s_form(gcdlab::power_law(1.0), B), 2.0, 1e-15);
}

TEST(SForm, MatchesOracle) {
  support::Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const auto B = support::random_index_set(rng, 1, 25, 5, 4);
    const auto w = support::random_weights(rng, 5, 0.05, 0.95);
    const double lib = gcdlab::s_form(gcdlab::WeightSequence::explicit_list(w), B);
    const double ref = static_cast<double>(oracle::s_form(support::widen(w), support::exponents(B)));
    ASSERT_LT(support::rel_diff(lib, ref), 1e-13);
  }
}

TEST(SForm, EqualsGcdSumThroughFactorization) {
  support::Rng rng(5);
  for (int i = 0; i < 30; ++i) {
    const IntegerSequence seq(support::random_values(rng, 1, 64, 1000000));
    const auto B = gcdlab::factorize_all(seq);
    for (double alpha : {0.25, 0.5, 0.75, 1.0}) {
      ASSERT_LT(support::rel_diff(gcdlab::gcd_sum(seq, alpha, true),
                                  gcdlab::s_form(gcdlab::power_law(alpha), B)),
                1e-12);
    }
  }
}

TEST(Extremal, SquarefreeMembers) {
  EXPECT_EQ(gcdlab::extremal_squarefree(1).values(), (std::vector<std::uint64_t>{1, 2}));
  EXPECT_EQ(gcdlab::extremal_squarefree(2).values(), (std::vector<std::uint64_t>{1, 2, 3, 6}));
  EXPECT_EQ(gcdlab::extremal_squarefree(3).values(),
            (std::vector<std::uint64_t>{1, 2, 3, 5, 6, 10, 15, 30}));
  EXPECT_THROW(gcdlab::extremal_squarefree(16), std::overflow_error);
  EXPECT_EQ(gcdlab::extremal_squarefree(15).size(), 32768u);
}

TEST(Extremal, SquarefreeClosedForm) {
  EXPECT_DOUBLE_EQ(gcdlab::squarefree_closed_form(1, 1.0), 3.0);
  EXPECT_DOUBLE_EQ(gcdlab::squarefree_closed_form(2, 1.0), 8.0);
  EXPECT_NEAR(gcdlab::squarefree_closed_form(2, 0.5), 4 * (1 + 1 / std::sqrt(2.0)) * (1 + 1 / std::sqrt(3.0)),
              1e-13);
  for (unsigned r = 1; r <= 6; ++r) {
    const auto seq = gcdlab::extremal_squarefree(r);
    const double ref = static_cast<double>(oracle::gcd_sum(seq.values(), 0.7L, false));
    ASSERT_LT(support::rel_diff(gcdlab::squarefree_closed_form(r, 0.7), ref), 1e-13);
  }
}

TEST(Extremal, Primes) {
  EXPECT_EQ(gcdlab::extremal_primes(1).values(), (std::vector<std::uint64_t>{2}));
  EXPECT_EQ(gcdlab::extremal_primes(5).values(), (std::vector<std::uint64_t>{2, 3, 5, 7, 11}));
  const double expected =
      1.0 + (2.0 / 3.0) * (1 / std::sqrt(6.0) + 1 / std::sqrt(10.0) + 1 / std::sqrt(15.0));
  EXPECT_NEAR(gcdlab::gcd_sum(gcdlab::extremal_primes(3), 0.5, true), expected, 1e-14);
  EXPECT_NEAR(expected, 1.65512, 1e-5);
}

TEST(Extremal, FirstIntegers) {
  EXPECT_EQ(gcdlab::first_integers(1).values(), (std::vector<std::uint64_t>{1}));
  EXPECT_EQ(gcdlab::first_integers(4).values(), (std::vector<std::uint64_t>{1, 2, 3, 4}));
  EXPECT_NEAR(gcdlab::gcd_sum(gcdlab::first_integers(4), 1.0, true),
              static_cast<double>(oracle::gcd_sum({1, 2, 3, 4}, 1.0L, true)), 1e-15);
}
