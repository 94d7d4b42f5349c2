#include <gtest/gtest.h>

#include "gips/errors.hpp"
#include "gips/colored_space.hpp"
#include "gips/estimate.hpp"
#include "oracles.hpp"

using gips::Permutation;
using gips::SymMatrix;

namespace {

SymMatrix chain_covariance() {
  Eigen::Matrix3d k;
  k << 2, -1, 0, -1, 2, -1, 0, -1, 2;
  return SymMatrix::symmetrize(k.inverse());
}

}  // namespace

TEST(MleCovariance, ProjectsAndReportsExistence) {
  gips::Rng rng(71);
  const auto s = gips::oracle::random_spd(5, rng);
  const auto sigma = Permutation::parse("(1,2)(3,4,5)", 5);
  const auto r = gips::mle_covariance(s, sigma, 9, 10);
  EXPECT_EQ(r.sigma_hat, gips::project(s, sigma));
  EXPECT_EQ(r.n0, 2);
  EXPECT_EQ(r.dim, gips::dimension(sigma));
  EXPECT_TRUE(r.mle_exists);
  ASSERT_TRUE(r.criteria.has_value());
  EXPECT_NEAR(r.criteria->bic - r.criteria->aic, static_cast<double>(r.dim) * (std::log(10.0) - 2.0), 1e-9);
}

TEST(MleCovariance, StillProjectsWhenTheEstimatorDoesNotExist) {
  gips::Rng rng(73);
  const auto s = gips::oracle::random_spd(5, rng);
  const auto r = gips::mle_covariance(s, Permutation::identity(5), 3);
  EXPECT_FALSE(r.mle_exists);
  EXPECT_FALSE(r.criteria.has_value());
  EXPECT_EQ(r.sigma_hat, s);
  EXPECT_THROW(gips::mle_covariance(s, Permutation::identity(4), 3), gips::InvalidArgument);
}

TEST(Threshold, ZeroKeepsEveryPairAndAboveOneKeepsNone) {
  gips::Rng rng(79);
  const auto s = gips::oracle::random_spd(6, rng);
  EXPECT_EQ(gips::threshold_partial_correlations(s, 0.0).size(), 15u);
  EXPECT_TRUE(gips::threshold_partial_correlations(s, 1.0001).empty());
  EXPECT_THROW(gips::threshold_partial_correlations(s, -0.1), gips::InvalidArgument);
}

TEST(Threshold, ChainPrecisionHasTwoEdges) {
  const auto edges = gips::threshold_partial_correlations(chain_covariance(), 0.3);
  ASSERT_EQ(edges.size(), 2u);
  EXPECT_EQ(edges[0].i, 0);
  EXPECT_EQ(edges[0].j, 1);
  EXPECT_NEAR(edges[0].partial_correlation, 0.5, 1e-12);
  EXPECT_EQ(edges[1].i, 1);
  EXPECT_EQ(edges[1].j, 2);
  EXPECT_NEAR(edges[1].partial_correlation, 0.5, 1e-12);
  EXPECT_EQ(gips::threshold_partial_correlations(chain_covariance(), 0.5 - 1e-12).size(), 2u);
}
