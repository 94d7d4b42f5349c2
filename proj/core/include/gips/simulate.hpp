#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "gips/linalg.hpp"
#include "gips/permutation.hpp"
#include "gips/random.hpp"

namespace gips {

/// W = sum_{m < shape} g_m g_m^T with g_m ~ N(0, I_p): a Wishart(I_p, shape) draw.
SymMatrix wishart_identity(std::size_t p, std::size_t shape, Rng& rng);

/// n rows from N_p(0, cov) as (L z)^T with cov = L L^T.
Eigen::MatrixXd sample_gaussian(const SymMatrix& cov, std::size_t n, Rng& rng);

struct Scenario {
  SymMatrix wishart;
  SymMatrix sigma_true;
  Eigen::MatrixXd data;
  /// Ridge eps added to the Wishart draw to make sigma_true positive definite
  /// (0 when none was needed).
  double ridge = 0.0;
};

/// Draws W ~ Wishart(I_p, shape) (shape defaults to p), sets
/// sigma_true = pi_<sigma>(W), repairing with eps * I (eps = 0.1, doubled
/// until positive definite) if needed, then samples n observations.
/// Streams: seed/1 for the Wishart draw, seed/2 for the observations.
Scenario simulate_scenario(const Permutation& sigma, std::size_t n, std::uint64_t seed,
                           std::optional<std::size_t> shape = std::nullopt);

}  // namespace gips
