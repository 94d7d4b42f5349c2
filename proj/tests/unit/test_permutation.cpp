#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "gips/errors.hpp"
#include "gips/permutation.hpp"
#include "gips/random.hpp"
#include "oracles.hpp"

using gips::CyclicSubgroup;
using gips::Permutation;

TEST(Permutation, ParseAndPrintRoundTrip) {
  for (const char* text : {"()", "(1,2)", "(1,2)(3,4)", "(1,3,2,4)", "(2,5)(3,4,6)"}) {
    EXPECT_EQ(Permutation::parse(text, 6).to_string(), text);
  }
  EXPECT_EQ(Permutation::parse("", 3).to_string(), "()");
  EXPECT_EQ(Permutation::parse("(12)(34)", 4), Permutation::parse("(1,2)(3,4)", 4));
  EXPECT_EQ(Permutation::parse(" ( 1 , 2 ) ", 3), Permutation::transposition(3, 0, 1));
}

TEST(Permutation, ParseRejectsMalformedText) {
  EXPECT_THROW(Permutation::parse("(1,2", 3), gips::InvalidArgument);
  EXPECT_THROW(Permutation::parse("(1,4)", 3), gips::InvalidArgument);
  EXPECT_THROW(Permutation::parse("(0,1)", 3), gips::InvalidArgument);
  EXPECT_THROW(Permutation::parse("(1,2)(2,3)", 3), gips::InvalidArgument);
  EXPECT_THROW(Permutation::parse("(1,1)", 3), gips::InvalidArgument);
  EXPECT_THROW(Permutation::parse("x", 3), gips::InvalidArgument);
  EXPECT_THROW(Permutation(std::vector<int>{0, 0, 1}), gips::InvalidArgument);
}

TEST(Permutation, CompositionAppliesRightFactorFirst) {
  const auto a = Permutation::parse("(1,2)", 3);
  const auto b = Permutation::parse("(2,3)", 3);
  // (a*b)(x) = a(b(x)): 1 -> 1 -> 2, 2 -> 3 -> 3, 3 -> 2 -> 1
  EXPECT_EQ((a * b).to_string(), "(1,2,3)");
  EXPECT_EQ((b * a).to_string(), "(1,3,2)");
}

TEST(Permutation, InverseAndPowers) {
  gips::Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = gips::oracle::random_permutation(1 + trial % 9, rng);
    EXPECT_TRUE((s * s.inverse()).is_identity());
    const auto n = static_cast<std::int64_t>(gips::oracle::order_by_iteration(s));
    EXPECT_TRUE(s.pow(n).is_identity());
    EXPECT_EQ(s.pow(-1), s.inverse());
    EXPECT_EQ(s.pow(n + 2), s * s);
  }
}

TEST(Permutation, SubgroupOrderMatchesIteration) {
  gips::Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = gips::oracle::random_permutation(1 + trial % 15, rng);
    EXPECT_EQ(gips::subgroup_order(s), gips::oracle::order_by_iteration(s));
  }
}

TEST(Permutation, CycleDecompositionCoversEveryIndexOnce) {
  const auto s = Permutation::parse("(1,3,5)(2,6)", 7);
  const auto cd = gips::cycle_decomposition(s);
  EXPECT_EQ(cd.count(), 4u);
  EXPECT_EQ(cd.lengths(), (std::vector<int>{3, 2, 1, 1}));
  std::vector<int> all;
  for (const auto& c : cd.cycles) all.insert(all.end(), c.begin(), c.end());
  std::sort(all.begin(), all.end());
  EXPECT_EQ(all, (std::vector<int>{0, 1, 2, 3, 4, 5, 6}));
}

TEST(Permutation, EulerTotient) {
  const std::vector<std::uint64_t> expected{1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4};
  for (std::uint64_t n = 1; n <= expected.size(); ++n) EXPECT_EQ(gips::euler_totient(n), expected[n - 1]) << n;
  EXPECT_EQ(gips::euler_totient(420), 96u);
}

TEST(CanonicalGenerator, AgreesWithBruteForceOnEveryPermutationUpToSeven) {
  for (std::size_t p = 1; p <= 7; ++p) {
    for (const auto& s : gips::oracle::all_permutations(p)) {
      ASSERT_EQ(gips::canonical_generator(s), gips::oracle::brute_canonical_generator(s)) << s.to_string();
    }
  }
}

TEST(CanonicalGenerator, AgreesWithBruteForceOnRandomLargerPermutations) {
  gips::Rng rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const auto s = gips::oracle::random_permutation(8 + trial % 13, rng);
    ASSERT_EQ(gips::canonical_generator(s), gips::oracle::brute_canonical_generator(s)) << s.to_string();
  }
}

TEST(CanonicalGenerator, IsInvariantAcrossGeneratorsOfTheSameSubgroup) {
  gips::Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = gips::oracle::random_permutation(10, rng);
    const auto n = gips::subgroup_order(s);
    const auto g = gips::canonical_generator(s);
    for (std::uint64_t k = 1; k <= n; ++k) {
      if (std::gcd(k, n) == 1) ASSERT_EQ(gips::canonical_generator(s.pow(static_cast<std::int64_t>(k))), g);
    }
  }
}

TEST(CyclicSubgroup, EqualityFollowsTheGeneratedGroup) {
  const auto s = Permutation::parse("(1,2,3,4)", 4);
  EXPECT_EQ(CyclicSubgroup(s), CyclicSubgroup(s.inverse()));
  EXPECT_NE(CyclicSubgroup(s), CyclicSubgroup(s * s));
  EXPECT_EQ(CyclicSubgroup(s.inverse()).to_string(), "(1,2,3,4)");
  EXPECT_EQ(CyclicSubgroup(s).order(), 4u);
}

TEST(Enumeration, CountsMatchKnownValues) {
  const std::vector<std::size_t> expected{1, 2, 5, 17, 67, 362, 2039, 14170};
  for (std::size_t p = 1; p <= expected.size(); ++p) {
    EXPECT_EQ(gips::enumerate_cyclic_subgroups(p).size(), expected[p - 1]) << p;
  }
}

TEST(Enumeration, MatchesBruteDeduplicationUpToSix) {
  for (std::size_t p = 1; p <= 6; ++p) {
    const auto fast = gips::enumerate_cyclic_subgroups(p);
    const auto slow = gips::oracle::brute_subgroup_generators(p);
    ASSERT_EQ(fast.size(), slow.size());
    for (std::size_t i = 0; i < fast.size(); ++i) EXPECT_EQ(fast[i].generator(), slow[i]);
  }
}

TEST(Enumeration, IsSortedStartsAtIdentityAndCountFormulaAgrees) {
  for (std::size_t p = 1; p <= 8; ++p) {
    const auto groups = gips::enumerate_cyclic_subgroups(p);
    EXPECT_TRUE(std::is_sorted(groups.begin(), groups.end()));
    EXPECT_TRUE(groups.front().generator().is_identity());
    EXPECT_DOUBLE_EQ(gips::cyclic_subgroup_count(p), static_cast<double>(groups.size()));
  }
  EXPECT_DOUBLE_EQ(gips::cyclic_subgroup_count(9), 109694.0);
}

TEST(Enumeration, RefusesLargeP) {
  EXPECT_THROW(gips::enumerate_cyclic_subgroups(10), gips::InvalidArgument);
}

TEST(PairOrbit, CollectsNormalizedPairsSorted) {
  const auto s = Permutation::parse("(1,2,3)", 4);
  EXPECT_EQ(gips::pair_orbit(s, {0, 1}), (std::vector<gips::IndexPair>{{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_EQ(gips::pair_orbit(s, {3, 3}), (std::vector<gips::IndexPair>{{3, 3}}));
  EXPECT_EQ(gips::pair_orbit(s, {3, 0}), (std::vector<gips::IndexPair>{{0, 3}, {1, 3}, {2, 3}}));
}

TEST(Transpositions, IndexCoversEveryPairOnce) {
  for (std::size_t p = 2; p <= 7; ++p) {
    std::set<std::pair<int, int>> seen;
    for (std::size_t t = 0; t < p * (p - 1) / 2; ++t) {
      const auto [i, j] = gips::transposition_from_index(p, t);
      ASSERT_LT(i, j);
      seen.emplace(i, j);
    }
    EXPECT_EQ(seen.size(), p * (p - 1) / 2);
  }
}

TEST(Transpositions, ComposeOnTheRight) {
  gips::Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = gips::oracle::random_permutation(6, rng);
    const int i = static_cast<int>(rng.uniform_index(6));
    int j = static_cast<int>(rng.uniform_index(5));
    if (j >= i) ++j;
    EXPECT_EQ(gips::compose_with_transposition(s, i, j), s * Permutation::transposition(6, i, j));
  }
}

TEST(Permutation, HashAgreesWithEquality) {
  std::hash<Permutation> h;
  EXPECT_EQ(h(Permutation::parse("(1,2)", 4)), h(Permutation::parse("(2,1)", 4)));
  EXPECT_NE(h(Permutation::identity(3)), h(Permutation::identity(4)));
}
