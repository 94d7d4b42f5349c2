#include "gips/simulate.hpp"

#include "gips/colored_space.hpp"
#include "gips/errors.hpp"

namespace gips {

SymMatrix wishart_identity(std::size_t p, std::size_t shape, Rng& rng) {
  if (p == 0) throw InvalidArgument("dimension must be positive");
  Eigen::MatrixXd g(static_cast<Eigen::Index>(shape), static_cast<Eigen::Index>(p));
  for (Eigen::Index m = 0; m < g.rows(); ++m) {
    for (Eigen::Index i = 0; i < g.cols(); ++i) g(m, i) = rng.normal();
  }
  return SymMatrix::symmetrize(g.transpose() * g);
}

Eigen::MatrixXd sample_gaussian(const SymMatrix& cov, std::size_t n, Rng& rng) {
  const Eigen::MatrixXd l = cholesky_lower(cov);
  Eigen::MatrixXd z(static_cast<Eigen::Index>(n), l.rows());
  for (Eigen::Index r = 0; r < z.rows(); ++r) {
    for (Eigen::Index c = 0; c < z.cols(); ++c) z(r, c) = rng.normal();
  }
  return z * l.transpose();
}

Scenario simulate_scenario(const Permutation& sigma, std::size_t n, std::uint64_t seed,
                           std::optional<std::size_t> shape) {
  const std::size_t p = sigma.size();
  if (p == 0) throw InvalidArgument("dimension must be positive");
  if (n == 0) throw InvalidArgument("need at least one observation");

  Rng wishart_rng(seed, 1);
  Rng data_rng(seed, 2);
  const ColoredSpace space(sigma);

  Scenario sc;
  sc.wishart = wishart_identity(p, shape.value_or(p), wishart_rng);
  sc.sigma_true = space.project(sc.wishart);
  for (double eps = 0.1; !is_positive_definite(sc.sigma_true); eps *= 2.0) {
    sc.ridge = eps;
    sc.sigma_true = space.project(sc.wishart + SymMatrix::identity(p, eps));
  }
  sc.data = sample_gaussian(sc.sigma_true, n, data_rng);
  return sc;
}

}  // namespace gips
