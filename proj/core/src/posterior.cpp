#include "gips/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace gips {

DivergentGamma::DivergentGamma(int k, double argument)
    : NumericError("divergent gamma factor at k = " + std::to_string(k) + " (argument " +
                   std::to_string(argument) + ")"),
      k_(k),
      argument_(argument) {}

Hyperparameters default_hyperparameters(const SymMatrix& s) {
  if (s.size() == 0) throw InvalidArgument("empty covariance matrix");
  const double tr = s.trace();
  if (!(tr > 0.0)) throw InvalidArgument("default D needs tr(S) > 0");
  return {3.0, SymMatrix::identity(s.size(), tr / static_cast<double>(s.size()))};
}

GipsModel::GipsModel(SymMatrix s, int n, bool mean_estimated, std::optional<double> delta,
                     std::optional<SymMatrix> d)
    : s_(std::move(s)), n_(n), n_eff_(mean_estimated ? n - 1 : n), mean_estimated_(mean_estimated) {
  if (s_.size() == 0) throw InvalidArgument("empty covariance matrix");
  if (!s_.all_finite()) throw InvalidArgument("covariance matrix has non-finite entries");
  if (n_eff_ < 1) {
    throw InvalidArgument("need n_eff >= 1 (n = " + std::to_string(n) +
                          (mean_estimated ? ", mean estimated)" : ", mean known)"));
  }
  if (!delta || !d) {
    const auto defaults = default_hyperparameters(s_);
    delta_ = delta.value_or(defaults.delta);
    d_ = d ? std::move(*d) : defaults.d;
  } else {
    delta_ = *delta;
    d_ = std::move(*d);
  }
  if (!(delta_ > 1.0)) throw InvalidArgument("delta must be > 1");
  if (d_.size() != s_.size()) throw InvalidArgument("D and S have different dimensions");
  if (!is_positive_definite(d_)) throw NotPositiveDefinite("hyperparameter D");
  u_ = static_cast<double>(n_eff_) * s_;
  d_plus_u_ = d_ + u_;
  if (!is_positive_definite(d_plus_u_)) throw NotPositiveDefinite("D + U");
}

double log_multi_gamma_block(int r, int d, double lambda) {
  if (r < 1 || (d != 1 && d != 2)) throw InvalidArgument("block gamma needs r >= 1 and d in {1, 2}");
  double acc = static_cast<double>(r) * (r - 1) * d / 4.0 * std::log(2.0 * std::numbers::pi);
  for (int k = 1; k <= r; ++k) {
    const double arg = lambda - (k - 1) * d / 2.0;
    if (!(arg > 0.0)) throw DivergentGamma(k, arg);
    acc += std::lgamma(arg);
  }
  return acc;
}

double log_norm_constant(const ColoredSpace& space, double delta, const SymMatrix& d) {
  if (!(delta > 1.0)) throw InvalidArgument("delta must be > 1");
  if (d.size() != space.size()) throw InvalidArgument("D has the wrong dimension");
  if (!is_positive_definite(d)) throw NotPositiveDefinite("hyperparameter D");

  const auto& sc = space.constants();
  const auto blocks = space.blocks(0.5 * d);

  double a = 0.0;
  double b = 0.0;
  double result = 0.0;
  for (std::size_t i = 0; i < sc.block_count(); ++i) {
    const double r = sc.r[i];
    const double di = sc.d[i];
    const double log_d = std::log(di);
    a += r * di * log_d;
    b += 0.5 * r * (1.0 + (r - 1.0) * di / 2.0) * log_d;

    const auto log_det = try_log_det(blocks[i]);
    if (!log_det) throw NotPositiveDefinite("block " + std::to_string(i + 1) + " of projected D/2");
    result += (-(delta + r - 3.0) / 2.0 - 1.0 / di) * *log_det;
    result += log_multi_gamma_block(sc.r[i], sc.d[i], 1.0 + di * (delta + r - 3.0) / 2.0);
  }
  return result - a * (delta - 2.0) / 2.0 - b;
}

double log_norm_constant(const Permutation& sigma, double delta, const SymMatrix& d) {
  return log_norm_constant(ColoredSpace(sigma), delta, d);
}

double log_quotient(const GipsModel& model, const ColoredSpace& space) {
  if (space.size() != model.size()) throw InvalidArgument("permutation size does not match the model");
  return log_norm_constant(space, model.delta() + model.n_eff(), model.posterior_d()) -
         log_norm_constant(space, model.delta(), model.d());
}

PosteriorEvaluation log_posterior_quotient(const GipsModel& model, const Permutation& sigma) {
  const ColoredSpace space(sigma);
  PosteriorEvaluation ev;
  ev.subgroup = CyclicSubgroup(sigma);
  ev.log_quotient = log_quotient(model, space);
  ev.n0 = space.n0();
  ev.dim = space.dimension();
  ev.mle_exists = model.n_eff() >= ev.n0;
  return ev;
}

std::vector<SubgroupProbability> softmax_probabilities(std::span<const PosteriorEvaluation> evaluations) {
  if (evaluations.empty()) throw InvalidArgument("no subgroups to normalize over");
  double max_log = -std::numeric_limits<double>::infinity();
  for (const auto& ev : evaluations) max_log = std::max(max_log, ev.log_quotient);

  std::vector<SubgroupProbability> out;
  out.reserve(evaluations.size());
  double total = 0.0;
  for (const auto& ev : evaluations) {
    const double w = std::exp(ev.log_quotient - max_log);
    total += w;
    out.push_back({ev.subgroup, ev.log_quotient, w});
  }
  for (auto& entry : out) entry.probability /= total;
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.probability != y.probability) return x.probability > y.probability;
    return x.subgroup < y.subgroup;
  });
  return out;
}

std::vector<SubgroupProbability> exact_posterior_probabilities(const GipsModel& model,
                                                               std::span<const CyclicSubgroup> subgroups) {
  if (subgroups.empty()) throw InvalidArgument("no subgroups to normalize over");
  std::vector<PosteriorEvaluation> evals;
  evals.reserve(subgroups.size());
  for (const auto& g : subgroups) evals.push_back(log_posterior_quotient(model, g.generator()));
  return softmax_probabilities(evals);
}

double compare_posteriors(const GipsModel& model, const Permutation& a, const Permutation& b) {
  return std::exp(log_quotient(model, ColoredSpace(a)) - log_quotient(model, ColoredSpace(b)));
}

ModelCriteria model_criteria(const SymMatrix& s, const ColoredSpace& space, int n, int n_eff) {
  if (n_eff < space.n0()) {
    throw NumericError("MLE does not exist: n_eff = " + std::to_string(n_eff) + " < n0 = " +
                       std::to_string(space.n0()));
  }
  const SymMatrix sigma_hat = space.project(s);
  const auto log_det = try_log_det(sigma_hat);
  if (!log_det) throw NotPositiveDefinite("projected covariance");
  const double p = static_cast<double>(space.size());
  const double trace_term = inverse_pd(sigma_hat).dense().cwiseProduct(s.dense()).sum();
  const double ne = n_eff;

  ModelCriteria mc;
  mc.parameters = space.dimension();
  mc.log_likelihood = -0.5 * ne * (p * std::log(2.0 * std::numbers::pi) + *log_det + trace_term);
  const auto k = static_cast<double>(mc.parameters);
  mc.bic = -2.0 * mc.log_likelihood + k * std::log(static_cast<double>(n));
  mc.aic = -2.0 * mc.log_likelihood + 2.0 * k;
  return mc;
}

ModelCriteria model_criteria(const GipsModel& model, const Permutation& sigma) {
  return model_criteria(model.s(), ColoredSpace(sigma), model.n(), model.n_eff());
}

}  // namespace gips
