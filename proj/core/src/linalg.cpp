#include "gips/linalg.hpp"

#include <cmath>
#include <string>

#include "gips/errors.hpp"

namespace gips {

SymMatrix SymMatrix::identity(std::size_t p, double scale) {
  SymMatrix out(p);
  out.m_.diagonal().setConstant(scale);
  return out;
}

SymMatrix SymMatrix::from_dense(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.rows() != m.cols()) throw InvalidArgument("matrix is not square");
  if (!m.allFinite()) throw InvalidArgument("matrix has non-finite entries");
  if (m.size() == 0) return symmetrize(m);
  const double scale = m.cwiseAbs().maxCoeff();
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > rel_tol * scale) {
    throw InvalidArgument("matrix is not symmetric");
  }
  return symmetrize(m);
}

SymMatrix SymMatrix::symmetrize(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("matrix is not square");
  SymMatrix out;
  out.m_ = 0.5 * (m + m.transpose());
  return out;
}

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
  if (a.size() != b.size()) throw InvalidArgument("dimension mismatch");
  SymMatrix out;
  out.m_ = a.m_ + b.m_;
  return out;
}

SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) {
  if (a.size() != b.size()) throw InvalidArgument("dimension mismatch");
  SymMatrix out;
  out.m_ = a.m_ - b.m_;
  return out;
}

SymMatrix operator*(double s, const SymMatrix& a) {
  SymMatrix out;
  out.m_ = s * a.m_;
  return out;
}

OrthoMatrix OrthoMatrix::from_dense(Eigen::MatrixXd m, double tol) {
  if (m.rows() != m.cols()) throw InvalidArgument("orthogonal matrix must be square");
  OrthoMatrix u(std::move(m));
  if (u.orthogonality_error() > tol) throw InvalidArgument("matrix columns are not orthonormal");
  return u;
}

double OrthoMatrix::orthogonality_error() const {
  if (m_.size() == 0) return 0.0;
  const Eigen::MatrixXd gram = m_.transpose() * m_;
  return (gram - Eigen::MatrixXd::Identity(m_.rows(), m_.cols())).cwiseAbs().maxCoeff();
}

std::optional<double> try_log_det(const SymMatrix& s) {
  if (s.size() == 0) return 0.0;
  if (!s.all_finite()) return std::nullopt;
  Eigen::LLT<Eigen::MatrixXd> llt(s.dense());
  if (llt.info() != Eigen::Success) return std::nullopt;
  const auto& l = llt.matrixLLT();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    if (!(l(i, i) > 0.0)) return std::nullopt;
    acc += std::log(l(i, i));
  }
  return 2.0 * acc;
}

double cholesky_log_det(const SymMatrix& s) {
  auto v = try_log_det(s);
  if (!v) throw NotPositiveDefinite("log-determinant of " + std::to_string(s.size()) + "x" + std::to_string(s.size()));
  return *v;
}

bool is_positive_definite(const SymMatrix& s) { return s.size() > 0 && try_log_det(s).has_value(); }

SymMatrix conjugate(const OrthoMatrix& u, const SymMatrix& s) {
  if (u.size() != s.size()) throw InvalidArgument("dimension mismatch in conjugation");
  return SymMatrix::symmetrize(u.dense().transpose() * s.dense() * u.dense());
}

Eigen::MatrixXd cholesky_lower(const SymMatrix& s) {
  if (!is_positive_definite(s)) throw NotPositiveDefinite("Cholesky factorization");
  Eigen::LLT<Eigen::MatrixXd> llt(s.dense());
  return llt.matrixL();
}

SymMatrix inverse_pd(const SymMatrix& s) {
  if (!is_positive_definite(s)) throw NotPositiveDefinite("matrix inverse");
  Eigen::LLT<Eigen::MatrixXd> llt(s.dense());
  return SymMatrix::symmetrize(llt.solve(Eigen::MatrixXd::Identity(s.dense().rows(), s.dense().cols())));
}

SampleCovariance sample_covariance(const Eigen::MatrixXd& data, bool mean_known_zero) {
  const auto n = static_cast<int>(data.rows());
  if (data.cols() == 0) throw InvalidArgument("data has no columns");
  if (!data.allFinite()) throw InvalidArgument("data has non-finite entries");
  if (mean_known_zero) {
    if (n < 1) throw InvalidArgument("need at least one observation");
    return {SymMatrix::symmetrize(data.transpose() * data / static_cast<double>(n)), n};
  }
  if (n < 2) throw InvalidArgument("need at least two observations when the mean is estimated");
  const Eigen::RowVectorXd mean = data.colwise().mean();
  const Eigen::MatrixXd centered = data.rowwise() - mean;
  return {SymMatrix::symmetrize(centered.transpose() * centered / static_cast<double>(n - 1)), n - 1};
}

}  // namespace gips
