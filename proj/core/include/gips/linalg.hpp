#pragma once

#include <cstddef>
#include <optional>

#include <Eigen/Dense>

namespace gips {

/// Dense p x p symmetric matrix. Symmetry is exact: every write goes to both
/// (i, j) and (j, i), and construction from a dense matrix symmetrizes.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t p) : m_(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p))) {}

  static SymMatrix identity(std::size_t p, double scale = 1.0);

  /// Accepts `m` if it is square and symmetric within `rel_tol` (relative to
  /// its largest entry), then averages it with its transpose.
  static SymMatrix from_dense(const Eigen::MatrixXd& m, double rel_tol = 1e-10);

  /// (m + m^T) / 2 with no symmetry check.
  static SymMatrix symmetrize(const Eigen::MatrixXd& m);

  std::size_t size() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  void set(std::size_t i, std::size_t j, double v) {
    m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    m_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
  }
  const Eigen::MatrixXd& dense() const noexcept { return m_; }

  double trace() const { return m_.trace(); }
  double frobenius_norm() const { return m_.norm(); }
  bool all_finite() const { return m_.allFinite(); }

  friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
  friend SymMatrix operator-(const SymMatrix& a, const SymMatrix& b);
  friend SymMatrix operator*(double s, const SymMatrix& a);
  friend bool operator==(const SymMatrix& a, const SymMatrix& b) {
    return a.m_.rows() == b.m_.rows() && a.m_ == b.m_;
  }

 private:
  Eigen::MatrixXd m_;
};

/// Square matrix with orthonormal columns (U^T U = I within 1e-10).
class OrthoMatrix {
 public:
  OrthoMatrix() = default;
  static OrthoMatrix from_dense(Eigen::MatrixXd m, double tol = 1e-10);

  std::size_t size() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const Eigen::MatrixXd& dense() const noexcept { return m_; }
  /// max |(U^T U - I)_ij|
  double orthogonality_error() const;

 private:
  explicit OrthoMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {}
  Eigen::MatrixXd m_;
};

/// log Det(S) via Cholesky. Throws NotPositiveDefinite when a pivot is <= 0.
double cholesky_log_det(const SymMatrix& s);

/// Same as cholesky_log_det but reports failure as nullopt.
std::optional<double> try_log_det(const SymMatrix& s);

bool is_positive_definite(const SymMatrix& s);

/// U^T S U, re-symmetrized.
SymMatrix conjugate(const OrthoMatrix& u, const SymMatrix& s);

/// S^-1 through a Cholesky solve; refuses non positive definite input.
SymMatrix inverse_pd(const SymMatrix& s);

/// Lower Cholesky factor L with S = L L^T.
Eigen::MatrixXd cholesky_lower(const SymMatrix& s);

struct SampleCovariance {
  SymMatrix s;
  int n_eff = 0;
};

/// Rows of `data` are observations. With an estimated mean the columns are
/// centered and S = centered^T centered / (n - 1), n_eff = n - 1; with a known
/// zero mean S = Z^T Z / n, n_eff = n. The scatter is always n_eff * S.
SampleCovariance sample_covariance(const Eigen::MatrixXd& data, bool mean_known_zero);

}  // namespace gips
