#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gips/linalg.hpp"
#include "gips/permutation.hpp"
#include "gips/posterior.hpp"

namespace gips {

struct EstimationReport {
  SymMatrix sigma_hat;
  CyclicSubgroup subgroup;
  int n0 = 0;
  int n_eff = 0;
  bool mle_exists = false;
  std::size_t dim = 0;
  /// Present iff the MLE exists and the projected matrix is positive definite.
  std::optional<ModelCriteria> criteria;
};

/// pi_<sigma>(S). When n_eff < n0 the projection is still returned (as a
/// regularized estimate) with mle_exists = false. `n` is the raw sample size
/// used in the BIC penalty; it defaults to n_eff.
EstimationReport mle_covariance(const SymMatrix& s, const Permutation& sigma, int n_eff,
                                std::optional<int> n = std::nullopt);

struct Edge {
  int i = 0;  // 0-based, i < j
  int j = 0;
  double partial_correlation = 0.0;
};

/// Edges {i, j} with |k_ij| / sqrt(k_ii k_jj) >= alpha for K = sigma_hat^-1.
/// The reported partial correlation is -k_ij / sqrt(k_ii k_jj).
std::vector<Edge> threshold_partial_correlations(const SymMatrix& sigma_hat, double alpha);

}  // namespace gips
