#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gips/linalg.hpp"
#include "gips/posterior.hpp"
#include "gips_cli/report.hpp"

namespace gips::cli {

/// Flags shared by the subcommands. Each subcommand reads the subset it
/// declares.
struct Options {
  std::string input;
  std::string covariance;
  std::optional<int> n;
  bool center = false;
  bool zero_mean = false;
  std::optional<double> delta;
  std::optional<double> d_scale;
  std::string d_matrix;
  std::string optimizer;
  std::optional<std::size_t> max_iter;
  std::uint64_t seed = 0;
  std::string start;
  std::string perm;
  std::optional<std::size_t> p;
  std::optional<std::size_t> shape;
  bool save_all = false;
  bool probabilities = false;
  std::optional<double> alpha;
  std::string output;
  bool quiet = false;
};

struct LoadedInput {
  SymMatrix s;
  int n = 0;
  bool mean_estimated = true;
};

/// Reads --input (observations) or --covariance (with --n) into S.
LoadedInput load_input(const Options& o);

GipsModel build_model(const Options& o, const LoadedInput& in);

/// Runs the configured optimizer (or evaluates --perm when given) and
/// assembles the report. Progress goes to `err` unless quiet.
AnalysisReport find_map(const Options& o, std::ostream& err);

/// Full command line: parses, dispatches, maps errors to exit codes
/// (0 ok, 2 usage or validation, 3 numeric failure).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gips::cli
