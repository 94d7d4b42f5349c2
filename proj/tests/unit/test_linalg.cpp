#include <gtest/gtest.h>

#include <cmath>

#include "gips/errors.hpp"
#include "gips/linalg.hpp"
#include "gips/random.hpp"
#include "oracles.hpp"

using gips::SymMatrix;

TEST(SymMatrix, FromDenseValidatesShapeAndSymmetry) {
  Eigen::MatrixXd rect(2, 3);
  rect.setZero();
  EXPECT_THROW(SymMatrix::from_dense(rect), gips::InvalidArgument);
  Eigen::MatrixXd skew(2, 2);
  skew << 1, 2, 3, 4;
  EXPECT_THROW(SymMatrix::from_dense(skew), gips::InvalidArgument);
  Eigen::MatrixXd nearly(2, 2);
  nearly << 1, 2, 2 + 1e-14, 4;
  const auto s = SymMatrix::from_dense(nearly);
  EXPECT_EQ(s(0, 1), s(1, 0));
}

TEST(SymMatrix, SetWritesBothTriangles) {
  SymMatrix s(3);
  s.set(0, 2, 5.0);
  EXPECT_EQ(s(2, 0), 5.0);
  EXPECT_EQ(s.trace(), 0.0);
}

TEST(Cholesky, LogDetMatchesCofactorExpansion) {
  gips::Rng rng(17);
  for (std::size_t p = 1; p <= 7; ++p) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto s = gips::oracle::random_spd(p, rng);
      const double want = std::log(gips::oracle::cofactor_determinant(s.dense()));
      EXPECT_NEAR(gips::cholesky_log_det(s), want, 1e-10 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST(Cholesky, RejectsIndefiniteAndSingular) {
  Eigen::MatrixXd m(2, 2);
  m << 1, 2, 2, 1;
  EXPECT_THROW(gips::cholesky_log_det(SymMatrix::from_dense(m)), gips::NotPositiveDefinite);
  EXPECT_FALSE(gips::try_log_det(SymMatrix::from_dense(m)).has_value());
  m << 1, 1, 1, 1;
  EXPECT_FALSE(gips::is_positive_definite(SymMatrix::from_dense(m)));
}

TEST(Cholesky, InverseAndFactor) {
  gips::Rng rng(23);
  const auto s = gips::oracle::random_spd(5, rng);
  const auto inv = gips::inverse_pd(s);
  EXPECT_LT((s.dense() * inv.dense() - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-10);
  const auto l = gips::cholesky_lower(s);
  EXPECT_LT((l * l.transpose() - s.dense()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(OrthoMatrix, ChecksOrthogonality) {
  Eigen::MatrixXd q(2, 2);
  q << 1, 1, -1, 1;
  q /= std::sqrt(2.0);
  EXPECT_LT(gips::OrthoMatrix::from_dense(q).orthogonality_error(), 1e-15);
  q(0, 0) = 2.0;
  EXPECT_THROW(gips::OrthoMatrix::from_dense(q), gips::InvalidArgument);
}

TEST(SampleCovariance, CentersAndNormalizes) {
  Eigen::MatrixXd z(3, 2);
  z << 1, 2, 3, 4, 5, 9;
  const auto est = gips::sample_covariance(z, false);
  EXPECT_EQ(est.n_eff, 2);
  EXPECT_NEAR(est.s(0, 0), 4.0, 1e-12);
  EXPECT_NEAR(est.s(0, 1), 7.0, 1e-12);
  EXPECT_NEAR(est.s(1, 1), 13.0, 1e-12);
  const auto zero = gips::sample_covariance(z, true);
  EXPECT_EQ(zero.n_eff, 3);
  EXPECT_NEAR(zero.s(0, 0), 35.0 / 3.0, 1e-12);
}
