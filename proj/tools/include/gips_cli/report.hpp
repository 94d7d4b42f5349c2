#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "gips/posterior.hpp"

namespace gips::cli {

inline constexpr const char* kReportSchema = "gips-report/1";

struct RunInfo {
  std::string optimizer;
  std::size_t evaluations = 0;
  std::size_t best_found_at = 0;
  std::optional<double> acceptance_rate;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_iter;

  friend bool operator==(const RunInfo&, const RunInfo&) = default;
};

struct ProbabilityRow {
  std::string permutation;
  double probability = 0.0;
  /// Exact tables carry the log quotient, estimated tables the visit count.
  std::optional<double> log_quotient;
  std::optional<std::size_t> visits;

  friend bool operator==(const ProbabilityRow&, const ProbabilityRow&) = default;
};

/// Everything a find-map run reports. Serialized as versioned JSON.
struct AnalysisReport {
  std::size_t p = 0;
  int n = 0;
  int n_eff = 0;
  bool mean_estimated = true;
  double delta = 3.0;
  Eigen::MatrixXd d;

  std::string map_permutation;
  std::uint64_t subgroup_order = 1;
  double log_posterior = 0.0;
  std::string start_permutation;
  double log_ratio_vs_start = 0.0;
  double log_ratio_vs_identity = 0.0;

  int n0 = 0;
  std::size_t dim = 0;
  bool mle_exists = false;
  std::optional<ModelCriteria> criteria;
  Eigen::MatrixXd sigma_hat;

  RunInfo run;
  /// "exact", "estimated" or empty when no table was requested.
  std::string probability_kind;
  std::vector<ProbabilityRow> probabilities;
  std::vector<std::string> warnings;
};

nlohmann::json to_json(const AnalysisReport& report);
/// Throws InvalidArgument on a missing field or a foreign schema tag.
AnalysisReport report_from_json(const nlohmann::json& j);

/// Human-readable summary for the terminal.
std::string summary(const AnalysisReport& report);

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j);

}  // namespace gips::cli
