#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gips/colored_space.hpp"
#include "gips/errors.hpp"
#include "gips/linalg.hpp"
#include "gips/permutation.hpp"

namespace gips {

/// A gamma factor Gamma(lambda - (k-1) d / 2) with non-positive argument.
class DivergentGamma : public NumericError {
 public:
  DivergentGamma(int k, double argument);
  int k() const noexcept { return k_; }
  double argument() const noexcept { return argument_; }

 private:
  int k_;
  double argument_;
};

struct Hyperparameters {
  double delta = 3.0;
  SymMatrix d;
};

/// delta = 3, D = tr(S)/p * I. Throws InvalidArgument when tr(S) <= 0.
Hyperparameters default_hyperparameters(const SymMatrix& s);

/// The data summary and prior that define one posterior landscape over
/// cyclic subgroups.
class GipsModel {
 public:
  /// `s` is the empirical covariance (normalized by n - 1 when the mean was
  /// estimated, by n otherwise). Missing hyperparameters get the defaults.
  GipsModel(SymMatrix s, int n, bool mean_estimated, std::optional<double> delta = std::nullopt,
            std::optional<SymMatrix> d = std::nullopt);

  std::size_t size() const noexcept { return s_.size(); }
  const SymMatrix& s() const noexcept { return s_; }
  int n() const noexcept { return n_; }
  int n_eff() const noexcept { return n_eff_; }
  bool mean_estimated() const noexcept { return mean_estimated_; }
  double delta() const noexcept { return delta_; }
  const SymMatrix& d() const noexcept { return d_; }
  /// U = n_eff * S
  const SymMatrix& scatter() const noexcept { return u_; }
  /// D + U
  const SymMatrix& posterior_d() const noexcept { return d_plus_u_; }

 private:
  SymMatrix s_;
  int n_ = 0;
  int n_eff_ = 0;
  bool mean_estimated_ = true;
  double delta_ = 3.0;
  SymMatrix d_;
  SymMatrix u_;
  SymMatrix d_plus_u_;
};

struct PosteriorEvaluation {
  CyclicSubgroup subgroup;
  double log_quotient = 0.0;
  int n0 = 0;
  std::size_t dim = 0;
  bool mle_exists = false;
};

/// log[(2 pi)^{r(r-1)d/4} prod_{k=1..r} Gamma(lambda - (k-1) d / 2)]
double log_multi_gamma_block(int r, int d, double lambda);

/// log I_<sigma>(delta, D). D is projected onto the colored space first.
double log_norm_constant(const ColoredSpace& space, double delta, const SymMatrix& d);
double log_norm_constant(const Permutation& sigma, double delta, const SymMatrix& d);

/// log I(delta + n_eff, D + U) - log I(delta, D) for the subgroup <sigma>.
double log_quotient(const GipsModel& model, const ColoredSpace& space);
PosteriorEvaluation log_posterior_quotient(const GipsModel& model, const Permutation& sigma);

struct SubgroupProbability {
  CyclicSubgroup subgroup;
  double log_quotient = 0.0;
  double probability = 0.0;
};

/// Max-shifted softmax over the evaluations, sorted by decreasing
/// probability (ties by generator).
std::vector<SubgroupProbability> softmax_probabilities(std::span<const PosteriorEvaluation> evaluations);

/// Exact posterior over the given subgroups (normally the full enumeration).
std::vector<SubgroupProbability> exact_posterior_probabilities(const GipsModel& model,
                                                               std::span<const CyclicSubgroup> subgroups);

/// P(<a> | data) / P(<b> | data)
double compare_posteriors(const GipsModel& model, const Permutation& a, const Permutation& b);

struct ModelCriteria {
  double log_likelihood = 0.0;
  double bic = 0.0;
  double aic = 0.0;
  std::size_t parameters = 0;
};

/// Gaussian log-likelihood of the n_eff centered observations under
/// Sigma = pi(S), plus BIC = -2l + k log n and AIC = -2l + 2k with
/// k = dim Z_<sigma>. Throws NumericError when n_eff < n0(sigma).
ModelCriteria model_criteria(const GipsModel& model, const Permutation& sigma);
ModelCriteria model_criteria(const SymMatrix& s, const ColoredSpace& space, int n, int n_eff);

}  // namespace gips
