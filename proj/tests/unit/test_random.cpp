#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "gips/errors.hpp"
#include "gips/colored_space.hpp"
#include "gips/random.hpp"
#include "gips/simulate.hpp"
#include "oracles.hpp"

using gips::Permutation;
using gips::Rng;

TEST(SplitMix64, KnownOutput) { EXPECT_EQ(gips::splitmix64(0), 0xe220a8397b1dcdafULL); }

TEST(Rng, SameSeedSameStream) {
  Rng a(42, 3), b(42, 3), c(42, 4), d(43, 3);
  bool differs_c = false, differs_d = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    differs_c |= x != c.next_u64();
    differs_d |= x != d.next_u64();
  }
  EXPECT_TRUE(differs_c);
  EXPECT_TRUE(differs_d);
  EXPECT_EQ(Rng(42).split(3).next_u64(), Rng(42, 3).next_u64());
}

TEST(Rng, EngineIsSeededAsDocumented) {
  std::mt19937_64 reference(gips::splitmix64(9 ^ gips::splitmix64(2)));
  Rng r(9, 2);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(r.next_u64(), reference());
}

TEST(Rng, Uniform01Range) {
  Rng r(1);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000.0, 0.5, 0.01);
}

TEST(Rng, UniformIndexIsUnbiased) {
  Rng r(2);
  std::vector<int> counts(6, 0);
  for (int i = 0; i < 60000; ++i) ++counts[r.uniform_index(6)];
  for (int c : counts) EXPECT_NEAR(c, 10000, 400);
  EXPECT_EQ(r.uniform_index(1), 0u);
  EXPECT_THROW(r.uniform_index(0), gips::InvalidArgument);
}

TEST(Rng, NormalMoments) {
  Rng r(3);
  double m1 = 0.0, m2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = r.normal();
    m1 += z;
    m2 += z * z;
  }
  EXPECT_NEAR(m1 / n, 0.0, 0.01);
  EXPECT_NEAR(m2 / n, 1.0, 0.01);
}

TEST(Simulate, IsDeterministic) {
  const auto sigma = Permutation::parse("(1,2,3,4)", 4);
  const auto a = gips::simulate_scenario(sigma, 20, 123);
  const auto b = gips::simulate_scenario(sigma, 20, 123);
  EXPECT_EQ(a.sigma_true, b.sigma_true);
  EXPECT_EQ(a.data, b.data);
  const auto c = gips::simulate_scenario(sigma, 20, 124);
  EXPECT_NE(a.data, c.data);
}

TEST(Simulate, TruthLivesInTheColoredSpace) {
  const auto sigma = Permutation::parse("(1,2,3,4,5)", 5);
  const auto sc = gips::simulate_scenario(sigma, 10, 5);
  EXPECT_LT((gips::project(sc.sigma_true, sigma).dense() - sc.sigma_true.dense()).cwiseAbs().maxCoeff(), 1e-12);
  for (std::size_t i = 1; i < 5; ++i) EXPECT_NEAR(sc.sigma_true(i, i), sc.sigma_true(0, 0), 1e-12);
  EXPECT_TRUE(gips::is_positive_definite(sc.sigma_true));
  EXPECT_EQ(sc.data.rows(), 10);
  EXPECT_EQ(sc.data.cols(), 5);
}

TEST(Simulate, RidgeRepairsASingularDraw) {
  // shape 1 gives a rank-one Wishart draw; the identity projection keeps it singular.
  const auto sc = gips::simulate_scenario(Permutation::identity(4), 5, 8, 1);
  EXPECT_GE(sc.ridge, 0.1);
  EXPECT_TRUE(gips::is_positive_definite(sc.sigma_true));
}

TEST(Simulate, SampleCovarianceConverges) {
  // Compared on the unit scale of the true variances: a Wishart(I_p, p)
  // draw has diagonal entries near p, which would inflate raw errors.
  const auto sigma = Permutation::parse("(1,2)(3,4,5)", 5);
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const auto sc = gips::simulate_scenario(sigma, 100000, seed);
    const auto est = gips::sample_covariance(sc.data, true);
    const Eigen::VectorXd scale = sc.sigma_true.dense().diagonal().cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXd err = scale.asDiagonal() * (est.s.dense() - sc.sigma_true.dense()) * scale.asDiagonal();
    EXPECT_LT(err.cwiseAbs().maxCoeff(), 0.05) << seed;
  }
}
