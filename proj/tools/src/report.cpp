#include "gips_cli/report.hpp"

#include <cstdio>
#include <sstream>

#include "gips/errors.hpp"
#include "gips_cli/io.hpp"

namespace gips::cli {
namespace {

using nlohmann::json;

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidArgument(std::string("report is missing \"") + key + "\"");
  return j.at(key);
}

template <class T>
T get(const json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("report field \"") + key + "\": " + e.what());
  }
}

template <class T>
std::optional<T> get_optional(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return get<T>(j, key);
}

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

}  // namespace

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  if (!j.is_array()) throw InvalidArgument("matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j.front().size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw InvalidArgument("ragged matrix");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& x = row[static_cast<std::size_t>(c)];
      if (!x.is_number()) throw InvalidArgument("matrix entries must be numbers");
      m(r, c) = x.get<double>();
    }
  }
  return m;
}

json to_json(const AnalysisReport& r) {
  json j;
  j["schema"] = kReportSchema;
  j["p"] = r.p;
  j["n"] = r.n;
  j["n_eff"] = r.n_eff;
  j["mean_estimated"] = r.mean_estimated;
  j["prior"] = {{"delta", r.delta}, {"d", matrix_to_json(r.d)}};
  j["map"] = {{"permutation", r.map_permutation},
              {"subgroup_order", r.subgroup_order},
              {"log_posterior", r.log_posterior},
              {"start_permutation", r.start_permutation},
              {"log_ratio_vs_start", r.log_ratio_vs_start},
              {"log_ratio_vs_identity", r.log_ratio_vs_identity}};
  j["estimate"] = {{"n0", r.n0}, {"dim", r.dim}, {"mle_exists", r.mle_exists}, {"sigma_hat", matrix_to_json(r.sigma_hat)}};
  if (r.criteria) {
    j["estimate"]["criteria"] = {{"log_likelihood", r.criteria->log_likelihood},
                                 {"bic", r.criteria->bic},
                                 {"aic", r.criteria->aic},
                                 {"parameters", r.criteria->parameters}};
  } else {
    j["estimate"]["criteria"] = nullptr;
  }
  json run = {{"optimizer", r.run.optimizer},
              {"evaluations", r.run.evaluations},
              {"best_found_at", r.run.best_found_at}};
  run["acceptance_rate"] = r.run.acceptance_rate ? json(*r.run.acceptance_rate) : json(nullptr);
  run["seed"] = r.run.seed ? json(*r.run.seed) : json(nullptr);
  run["max_iter"] = r.run.max_iter ? json(*r.run.max_iter) : json(nullptr);
  j["run"] = std::move(run);
  if (r.probability_kind.empty()) {
    j["probabilities"] = nullptr;
  } else {
    json table = json::array();
    for (const auto& row : r.probabilities) {
      json e = {{"permutation", row.permutation}, {"probability", row.probability}};
      if (row.log_quotient) e["log_quotient"] = *row.log_quotient;
      if (row.visits) e["visits"] = *row.visits;
      table.push_back(std::move(e));
    }
    j["probabilities"] = {{"kind", r.probability_kind}, {"table", std::move(table)}};
  }
  j["warnings"] = r.warnings;
  return j;
}

AnalysisReport report_from_json(const json& j) {
  const auto schema = get<std::string>(j, "schema");
  if (schema != kReportSchema) throw InvalidArgument("unsupported report schema \"" + schema + "\"");
  AnalysisReport r;
  r.p = get<std::size_t>(j, "p");
  r.n = get<int>(j, "n");
  r.n_eff = get<int>(j, "n_eff");
  r.mean_estimated = get<bool>(j, "mean_estimated");
  const auto& prior = field(j, "prior");
  r.delta = get<double>(prior, "delta");
  r.d = matrix_from_json(field(prior, "d"));
  const auto& map = field(j, "map");
  r.map_permutation = get<std::string>(map, "permutation");
  r.subgroup_order = get<std::uint64_t>(map, "subgroup_order");
  r.log_posterior = get<double>(map, "log_posterior");
  r.start_permutation = get<std::string>(map, "start_permutation");
  r.log_ratio_vs_start = get<double>(map, "log_ratio_vs_start");
  r.log_ratio_vs_identity = get<double>(map, "log_ratio_vs_identity");
  const auto& est = field(j, "estimate");
  r.n0 = get<int>(est, "n0");
  r.dim = get<std::size_t>(est, "dim");
  r.mle_exists = get<bool>(est, "mle_exists");
  r.sigma_hat = matrix_from_json(field(est, "sigma_hat"));
  if (est.contains("criteria") && !est.at("criteria").is_null()) {
    const auto& c = est.at("criteria");
    r.criteria = ModelCriteria{get<double>(c, "log_likelihood"), get<double>(c, "bic"), get<double>(c, "aic"),
                               get<std::size_t>(c, "parameters")};
  }
  const auto& run = field(j, "run");
  r.run.optimizer = get<std::string>(run, "optimizer");
  r.run.evaluations = get<std::size_t>(run, "evaluations");
  r.run.best_found_at = get<std::size_t>(run, "best_found_at");
  r.run.acceptance_rate = get_optional<double>(run, "acceptance_rate");
  r.run.seed = get_optional<std::uint64_t>(run, "seed");
  r.run.max_iter = get_optional<std::size_t>(run, "max_iter");
  if (j.contains("probabilities") && !j.at("probabilities").is_null()) {
    const auto& probs = j.at("probabilities");
    r.probability_kind = get<std::string>(probs, "kind");
    for (const auto& row : field(probs, "table")) {
      ProbabilityRow pr;
      pr.permutation = get<std::string>(row, "permutation");
      pr.probability = get<double>(row, "probability");
      pr.log_quotient = get_optional<double>(row, "log_quotient");
      pr.visits = get_optional<std::size_t>(row, "visits");
      r.probabilities.push_back(std::move(pr));
    }
  }
  r.warnings = get<std::vector<std::string>>(j, "warnings");
  return r;
}

std::string summary(const AnalysisReport& r) {
  std::ostringstream out;
  out << "MAP permutation: " << r.map_permutation << "  (subgroup of order " << r.subgroup_order << ")\n";
  out << "  found after " << r.run.best_found_at << " of " << r.run.evaluations << " posterior evaluations\n";
  out << "  log posterior quotient: " << fixed(r.log_posterior, 6) << '\n';
  out << "  posterior ratio vs " << r.start_permutation << " (start): " << ratio_to_string(r.log_ratio_vs_start)
      << '\n';
  out << "  posterior ratio vs (): " << ratio_to_string(r.log_ratio_vs_identity) << '\n';
  out << '\n';
  out << "Data\n";
  out << "  observations: " << r.n << '\n';
  if (r.mean_estimated) {
    out << "  mean estimated from the data; " << r.n_eff << " degrees of freedom remain\n";
  } else {
    out << "  mean known to be zero; " << r.n_eff << " degrees of freedom\n";
  }
  out << "  prior: delta = " << format_double(r.delta) << '\n';
  out << '\n';
  out << "Estimate\n";
  out << "  n0: " << r.n0 << '\n';
  out << "  MLE exists: " << (r.mle_exists ? "yes" : "no") << " (n_eff " << (r.mle_exists ? ">=" : "<") << " n0)\n";
  out << "  free covariance parameters: " << r.dim << '\n';
  if (r.criteria) {
    out << "  log-likelihood: " << fixed(r.criteria->log_likelihood, 4) << '\n';
    out << "  BIC: " << fixed(r.criteria->bic, 4) << '\n';
    out << "  AIC: " << fixed(r.criteria->aic, 4) << '\n';
  } else {
    out << "  log-likelihood, BIC, AIC: not available\n";
  }
  out << '\n';
  out << "Search\n";
  out << "  optimizer: " << r.run.optimizer << '\n';
  out << "  posterior evaluations: " << r.run.evaluations << '\n';
  if (r.run.acceptance_rate) out << "  acceptance rate: " << fixed(*r.run.acceptance_rate, 4) << '\n';
  out << "  evaluations after the MAP was found: " << (r.run.evaluations - r.run.best_found_at) << '\n';
  if (r.run.seed) out << "  seed: " << *r.run.seed << '\n';
  if (!r.probability_kind.empty()) {
    out << '\n' << "Posterior probabilities (" << r.probability_kind << ")\n";
    const std::size_t shown = std::min<std::size_t>(r.probabilities.size(), 10);
    for (std::size_t i = 0; i < shown; ++i) {
      out << "  " << r.probabilities[i].permutation << "  " << fixed(r.probabilities[i].probability, 6) << '\n';
    }
    if (shown < r.probabilities.size()) out << "  ... " << r.probabilities.size() - shown << " more\n";
  }
  for (const auto& w : r.warnings) out << "warning: " << w << '\n';
  return out.str();
}

}  // namespace gips::cli
