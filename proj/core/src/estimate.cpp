#include "gips/estimate.hpp"

#include <cmath>

#include "gips/colored_space.hpp"
#include "gips/errors.hpp"

namespace gips {

EstimationReport mle_covariance(const SymMatrix& s, const Permutation& sigma, int n_eff, std::optional<int> n) {
  if (s.size() != sigma.size()) throw InvalidArgument("permutation size does not match the matrix");
  const ColoredSpace space(sigma);
  EstimationReport report;
  report.sigma_hat = space.project(s);
  report.subgroup = CyclicSubgroup(sigma);
  report.n0 = space.n0();
  report.n_eff = n_eff;
  report.mle_exists = n_eff >= report.n0;
  report.dim = space.dimension();
  if (report.mle_exists) {
    try {
      report.criteria = model_criteria(s, space, n.value_or(n_eff), n_eff);
    } catch (const NotPositiveDefinite&) {
      report.criteria.reset();
    }
  }
  return report;
}

std::vector<Edge> threshold_partial_correlations(const SymMatrix& sigma_hat, double alpha) {
  if (!(alpha >= 0.0)) throw InvalidArgument("alpha must be >= 0");
  const Eigen::MatrixXd k = inverse_pd(sigma_hat).dense();
  std::vector<Edge> edges;
  for (Eigen::Index i = 0; i < k.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < k.cols(); ++j) {
      const double scaled = k(i, j) / std::sqrt(k(i, i) * k(j, j));
      if (std::abs(scaled) >= alpha) edges.push_back({static_cast<int>(i), static_cast<int>(j), -scaled});
    }
  }
  return edges;
}

}  // namespace gips
