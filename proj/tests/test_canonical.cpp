#include <gtest/gtest.h>

#include "gcdlab/canonical.hpp"
#include "gcdlab/gcdcore.hpp"
#include "oracles.hpp"
#include "support.hpp"

using gcdlab::IndexSet;
using gcdlab::MultiIndex;
using gcdlab::WeightSequence;

namespace {

std::vector<MultiIndex> sorted(const IndexSet& B) { return B.sorted_members(); }

}  // namespace

TEST(KappaCanonical, Examples) {
  EXPECT_TRUE(gcdlab::is_kappa_canonical(IndexSet{MultiIndex{}}, 0));
  EXPECT_TRUE(gcdlab::is_kappa_canonical(IndexSet{MultiIndex{}, MultiIndex{{1, 1}}}, 0));
  EXPECT_FALSE(gcdlab::is_kappa_canonical(IndexSet{MultiIndex{{1, 1}}}, 0));
  // Positions at or below kappa are exempt.
  EXPECT_TRUE(gcdlab::is_kappa_canonical(IndexSet{MultiIndex{{1, 1}}}, 1));
}

TEST(Part1, Examples) {
  EXPECT_EQ(sorted(gcdlab::part1_reduce(IndexSet{MultiIndex{}})), sorted(IndexSet{MultiIndex{}}));
  EXPECT_EQ(sorted(gcdlab::part1_reduce(IndexSet{MultiIndex{{1, 2}}})), sorted(IndexSet{MultiIndex{}}));
  const IndexSet closed{MultiIndex{}, MultiIndex{{1, 1}}};
  EXPECT_EQ(sorted(gcdlab::part1_reduce(closed)), sorted(closed));
}

TEST(Part1, ResultHasMaximalClosureAndSameSize) {
  support::Rng rng(21);
  for (int i = 0; i < 300; ++i) {
    const auto B = support::random_index_set(rng, 1, 12, 4, 3);
    const auto R = gcdlab::part1_reduce(B);
    ASSERT_EQ(R.size(), B.size());
    ASSERT_TRUE(gcdlab::has_maximal_closure(R));
  }
}

TEST(Part2, Examples) {
  const IndexSet compact{MultiIndex{}, MultiIndex{{1, 1}}};
  EXPECT_EQ(sorted(gcdlab::part2_compactify(compact, 0)), sorted(compact));
  EXPECT_EQ(sorted(gcdlab::part2_compactify(IndexSet{MultiIndex{{1, 1}}, MultiIndex{{1, 2}}}, 0)),
            sorted(compact));
  EXPECT_EQ(sorted(gcdlab::part2_compactify(IndexSet{MultiIndex{{2, 1}}}, 0)), sorted(IndexSet{MultiIndex{}}));
  EXPECT_THROW(gcdlab::part2_compactify(IndexSet{MultiIndex{}}, 1), std::invalid_argument);
}

TEST(CanonicalReduce, Examples) {
  const auto t = WeightSequence::explicit_list({0.3, 0.2});
  const auto trivial = gcdlab::canonical_reduce(IndexSet{MultiIndex{}}, t);
  EXPECT_EQ(sorted(trivial.reduced), sorted(IndexSet{MultiIndex{}}));
  EXPECT_DOUBLE_EQ(trivial.weights(1), 0.6);

  const IndexSet B{MultiIndex{{1, 1}}, MultiIndex{{1, 2}}};
  const auto r = gcdlab::canonical_reduce(B, t);
  EXPECT_EQ(r.kappa, 0u);
  EXPECT_EQ(sorted(r.reduced), sorted(IndexSet{MultiIndex{}, MultiIndex{{1, 1}}}));
  EXPECT_DOUBLE_EQ(gcdlab::s_form(t, B), 1.3);
  EXPECT_DOUBLE_EQ(gcdlab::s_form(r.weights, r.reduced), 1.6);
}

TEST(CanonicalReduce, RejectsKappaAtLeastN) {
  const auto t = WeightSequence::explicit_list({0.9, 0.8});
  EXPECT_THROW(gcdlab::canonical_reduce(IndexSet{MultiIndex{}, MultiIndex{{1, 1}}}, t),
               std::invalid_argument);
}

TEST(CanonicalReduce, PropertiesOnRandomSets) {
  support::Rng rng(22);
  int done = 0;
  while (done < 400) {
    const auto B = support::random_index_set(rng, 1, 10, 6, 3);
    const auto w = support::random_weights(rng, 6, 0.05, 0.95);
    const auto t = WeightSequence::explicit_list(w);
    if (gcdlab::kappa(t) >= B.size()) continue;
    ++done;
    const auto r = gcdlab::canonical_reduce(B, t);
    ASSERT_EQ(r.reduced.size(), B.size());
    ASSERT_TRUE(gcdlab::is_kappa_canonical(r.reduced, r.kappa));
    ASSERT_LE(r.reduced.support_union().size() + 1, B.size());
    // Oracle values of S before and after.
    std::vector<oracle::Real> eta_w;
    for (double x : w) eta_w.push_back(x < 0.5 ? 2 * x : x);
    const auto before = oracle::s_form(support::widen(w), support::exponents(B));
    const auto after = oracle::s_form(eta_w, support::exponents(r.reduced));
    ASSERT_GE(after, before - 1e-12L);
  }
}
