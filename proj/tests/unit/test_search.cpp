#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "gips/errors.hpp"
#include "gips/search.hpp"
#include "oracles.hpp"

using gips::GipsModel;
using gips::Permutation;

namespace {

GipsModel aspirin() {
  const auto z = gips::oracle::read_fixture("aspirin.csv");
  const auto sc = gips::sample_covariance(z, false);
  return GipsModel(sc.s, static_cast<int>(z.rows()), true);
}

GipsModel random_model(std::size_t p, std::uint64_t seed, int n = 12) {
  gips::Rng rng(seed);
  return GipsModel(gips::oracle::random_spd(p, rng), n, true);
}

}  // namespace

TEST(BruteForce, AspirinFindsTheDoubleTransposition) {
  const auto model = aspirin();
  gips::BruteForceOptions opt;
  opt.save_all = true;
  const auto r = gips::brute_force(model, opt);
  EXPECT_EQ(r.optimizer, "brute_force");
  EXPECT_EQ(r.evaluations, 17u);
  EXPECT_EQ(r.best.subgroup.to_string(), "(1,2)(3,4)");
  EXPECT_TRUE(r.start.subgroup.generator().is_identity());
  ASSERT_EQ(r.evaluated.size(), 17u);
  for (const auto& ev : r.evaluated) EXPECT_LE(ev.log_quotient, r.best.log_quotient);
  EXPECT_EQ(r.evaluated[r.best_found_at - 1].subgroup, r.best.subgroup);
}

TEST(BruteForce, ResultDoesNotDependOnWorkerCount) {
  const auto model = random_model(6, 3);
  gips::BruteForceOptions one;
  one.workers = 1;
  one.save_all = true;
  gips::BruteForceOptions many = one;
  many.workers = 4;
  const auto a = gips::brute_force(model, one);
  const auto b = gips::brute_force(model, many);
  EXPECT_EQ(a.best.subgroup, b.best.subgroup);
  EXPECT_EQ(a.best.log_quotient, b.best.log_quotient);
  EXPECT_EQ(a.best_found_at, b.best_found_at);
  ASSERT_EQ(a.evaluated.size(), b.evaluated.size());
  for (std::size_t i = 0; i < a.evaluated.size(); ++i) {
    EXPECT_EQ(a.evaluated[i].log_quotient, b.evaluated[i].log_quotient);
  }
}

TEST(BruteForce, TiesGoToTheSmallestGenerator) {
  // S = I with D = I: every subgroup containing a relabeling-equivalent
  // structure gets the same quotient, so the winner must be the first one.
  const GipsModel model(gips::SymMatrix::identity(3), 50, true);
  gips::BruteForceOptions opt;
  opt.save_all = true;
  const auto r = gips::brute_force(model, opt);
  for (std::size_t i = 0; i + 1 < r.best_found_at; ++i) {
    EXPECT_LT(r.evaluated[i].log_quotient, r.best.log_quotient);
  }
}

TEST(BruteForce, GuardsLargeDimensions) {
  EXPECT_THROW(gips::brute_force(random_model(10, 1)), gips::InvalidArgument);
}

TEST(BruteForce, ReportsProgress) {
  std::size_t last = 0;
  gips::BruteForceOptions opt;
  opt.progress = [&](std::size_t done, std::size_t total, const gips::PosteriorEvaluation&) {
    EXPECT_EQ(total, 67u);
    last = done;
  };
  gips::brute_force(random_model(5, 2), opt);
  EXPECT_EQ(last, 67u);
}

TEST(MetropolisHastings, IsDeterministicGivenSeedAndStart) {
  const auto model = random_model(6, 5);
  gips::MetropolisHastingsOptions opt;
  opt.max_iter = 500;
  opt.seed = 77;
  opt.save_all = true;
  const auto a = gips::metropolis_hastings(model, opt);
  const auto b = gips::metropolis_hastings(model, opt);
  ASSERT_TRUE(a.trace && b.trace);
  EXPECT_EQ(*a.trace, *b.trace);
  EXPECT_EQ(a.best.log_quotient, b.best.log_quotient);
  EXPECT_EQ(a.acceptance_rate, b.acceptance_rate);
  opt.seed = 78;
  const auto c = gips::metropolis_hastings(model, opt);
  EXPECT_NE(*a.trace, *c.trace);
}

TEST(MetropolisHastings, TraceAndCountersFollowTheConvention) {
  const auto model = aspirin();
  gips::MetropolisHastingsOptions opt;
  opt.max_iter = 25;
  opt.seed = 1;
  opt.save_all = true;
  opt.start = Permutation::parse("(1,3)", 4);
  const auto r = gips::metropolis_hastings(model, opt);
  ASSERT_TRUE(r.trace);
  EXPECT_EQ(r.trace->size(), 25u);
  EXPECT_EQ(r.trace->front(), *opt.start);
  EXPECT_EQ(r.evaluations, 25u);
  EXPECT_EQ(r.start.subgroup, gips::CyclicSubgroup(*opt.start));
  ASSERT_TRUE(r.acceptance_rate);
  EXPECT_GE(*r.acceptance_rate, 0.0);
  EXPECT_LE(*r.acceptance_rate, 1.0);
  for (const auto& s : *r.trace) {
    EXPECT_LE(gips::log_posterior_quotient(model, s).log_quotient, r.best.log_quotient + 1e-12);
  }
  // Consecutive states differ by at most one transposition.
  for (std::size_t t = 1; t < r.trace->size(); ++t) {
    const auto step = (*r.trace)[t - 1].inverse() * (*r.trace)[t];
    int moved = 0;
    for (std::size_t i = 0; i < 4; ++i) moved += step(static_cast<int>(i)) != static_cast<int>(i);
    EXPECT_TRUE(moved == 0 || moved == 2);
  }
  ASSERT_EQ(r.warnings.size(), 1u);
}

TEST(MetropolisHastings, NoWarningWithinTheSubgroupCount) {
  gips::MetropolisHastingsOptions opt;
  opt.max_iter = 17;
  const auto r = gips::metropolis_hastings(aspirin(), opt);
  EXPECT_TRUE(r.warnings.empty());
  EXPECT_FALSE(r.trace.has_value());
}

TEST(MetropolisHastings, RejectsDegenerateArguments) {
  gips::MetropolisHastingsOptions opt;
  opt.max_iter = 1;
  EXPECT_THROW(gips::metropolis_hastings(aspirin(), opt), gips::InvalidArgument);
  opt.max_iter = 10;
  opt.start = Permutation::identity(3);
  EXPECT_THROW(gips::metropolis_hastings(aspirin(), opt), gips::InvalidArgument);
}

TEST(HillClimb, StopsAtALocalMaximum) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto model = random_model(6, seed, 30);
    gips::HillClimbOptions opt;
    opt.save_all = true;
    const auto r = gips::hill_climb(model, opt);
    const auto& best = r.best.subgroup.generator();
    ASSERT_TRUE(r.trace);
    const auto& last = r.trace->back();
    EXPECT_EQ(gips::CyclicSubgroup(last), r.best.subgroup);
    for (int i = 0; i < 6; ++i) {
      for (int j = i + 1; j < 6; ++j) {
        EXPECT_LE(gips::log_posterior_quotient(model, gips::compose_with_transposition(last, i, j)).log_quotient,
                  r.best.log_quotient);
      }
    }
    for (std::size_t t = 1; t < r.trace->size(); ++t) {
      EXPECT_LT(gips::log_posterior_quotient(model, (*r.trace)[t - 1]).log_quotient,
                gips::log_posterior_quotient(model, (*r.trace)[t]).log_quotient);
    }
    (void)best;
  }
}

TEST(HillClimb, HonorsTheMoveBudget) {
  gips::HillClimbOptions opt;
  opt.max_iter = 1;
  opt.save_all = true;
  const auto r = gips::hill_climb(random_model(6, 9, 30), opt);
  EXPECT_LE(r.trace->size(), 2u);
}

TEST(EstimateProbabilities, WeighsVisitsByTotient) {
  const std::vector<Permutation> trace{Permutation::identity(3), Permutation::parse("(1,2,3)", 3),
                                       Permutation::parse("(1,3,2)", 3)};
  const auto est = gips::estimate_probabilities(trace);
  ASSERT_EQ(est.entries.size(), 2u);
  for (const auto& e : est.entries) EXPECT_NEAR(e.probability, 0.5, 1e-15);
  EXPECT_EQ(est.entries[0].subgroup.to_string(), "()");
  EXPECT_EQ(est.entries[1].visits, 2u);
  EXPECT_DOUBLE_EQ(est.entries[1].weight, 1.0);
}

TEST(EstimateProbabilities, SingleSubgroupTraceHasProbabilityOne) {
  const std::vector<Permutation> trace(5, Permutation::parse("(1,2)", 3));
  const auto est = gips::estimate_probabilities(trace);
  ASSERT_EQ(est.entries.size(), 1u);
  EXPECT_EQ(est.entries[0].probability, 1.0);
  EXPECT_THROW(gips::estimate_probabilities(std::vector<Permutation>{}), gips::InvalidArgument);
}

TEST(QuotientCache, MemoizesBySubgroup) {
  const auto model = aspirin();
  gips::QuotientCache cache(model);
  const auto a = cache.evaluate(Permutation::parse("(1,2,3,4)", 4));
  const auto b = cache.evaluate(Permutation::parse("(1,4,3,2)", 4));
  EXPECT_EQ(cache.size(), 1u);
  EXPECT_EQ(a.log_quotient, b.log_quotient);
}
