#include "gips_cli/commands.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gips/colored_space.hpp"
#include "gips/errors.hpp"
#include "gips/estimate.hpp"
#include "gips/search.hpp"
#include "gips/simulate.hpp"
#include "gips_cli/io.hpp"

namespace gips::cli {
namespace {

using nlohmann::json;

class Progress {
 public:
  Progress(std::ostream& err, std::string label, bool enabled) : err_(err), label_(std::move(label)), on_(enabled) {}
  ~Progress() { finish(); }

  ProgressCallback callback() {
    if (!on_) return {};
    return [this](std::size_t done, std::size_t total, const PosteriorEvaluation& best) {
      err_ << '\r' << label_ << ' ' << done;
      if (total > 0) err_ << '/' << total;
      err_ << "  best " << best.subgroup.to_string() << " log quotient " << format_double(best.log_quotient)
           << "   " << std::flush;
      printed_ = true;
    };
  }

  void finish() {
    if (printed_) err_ << '\n';
    printed_ = false;
  }

 private:
  std::ostream& err_;
  std::string label_;
  bool on_;
  bool printed_ = false;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << text;
  out.close();
  if (!out) throw InvalidArgument("failed writing " + path);
}

std::string sidecar(const std::string& output) {
  return std::filesystem::path(output).replace_extension(".report.json").string();
}

bool ends_with_json(const std::string& path) { return std::filesystem::path(path).extension() == ".json"; }

json criteria_json(const std::optional<ModelCriteria>& c) {
  if (!c) return nullptr;
  return {{"log_likelihood", c->log_likelihood}, {"bic", c->bic}, {"aic", c->aic}, {"parameters", c->parameters}};
}

void fill_probabilities(AnalysisReport& r, const SearchResult& result) {
  if (!result.evaluated.empty()) {
    r.probability_kind = "exact";
    for (const auto& row : softmax_probabilities(result.evaluated)) {
      r.probabilities.push_back({row.subgroup.to_string(), row.probability, row.log_quotient, std::nullopt});
    }
    return;
  }
  if (!result.trace) throw InvalidArgument("probabilities need --save-all");
  r.probability_kind = "estimated";
  for (const auto& e : estimate_probabilities(*result.trace).entries) {
    r.probabilities.push_back({e.subgroup.to_string(), e.probability, std::nullopt, e.visits});
  }
}

std::string probability_csv(const AnalysisReport& r) {
  std::ostringstream out;
  const bool exact = r.probability_kind == "exact";
  out << "permutation,probability," << (exact ? "log_quotient" : "visits") << ",kind\n";
  for (const auto& row : r.probabilities) {
    out << '"' << row.permutation << "\"," << format_double(row.probability) << ',';
    if (exact) {
      out << format_double(row.log_quotient.value_or(0.0));
    } else {
      out << row.visits.value_or(0);
    }
    out << ',' << r.probability_kind << '\n';
  }
  return out.str();
}

json probability_json(const AnalysisReport& r) { return to_json(r).at("probabilities"); }

void add_input_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--input", o.input, "CSV of observations (rows) by variables (columns)");
  cmd->add_option("--covariance", o.covariance, "CSV holding a square covariance matrix");
  cmd->add_option("--n", o.n, "number of observations (required with --covariance)")->check(CLI::PositiveNumber);
  auto* center = cmd->add_flag("--center", o.center, "estimate the mean (default)");
  cmd->add_flag("--zero-mean", o.zero_mean, "the mean is known to be zero")->excludes(center);
}

void add_prior_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--delta", o.delta, "prior shape delta > 1 (default 3)");
  auto* scale = cmd->add_option("--d-scale", o.d_scale, "prior scale D = d * I (default tr(S)/p)");
  cmd->add_option("--d-matrix", o.d_matrix, "CSV holding the prior scale matrix D")->excludes(scale);
}

void add_search_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--optimizer", o.optimizer, "bf, mh or hc (default bf for p <= 9, mh otherwise)")
      ->check(CLI::IsMember({"bf", "mh", "hc"}));
  cmd->add_option("--max-iter", o.max_iter, "iterations (mh) or moves (hc)")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "random seed for mh (default 0)");
  cmd->add_option("--start", o.start, "starting permutation for mh and hc, e.g. \"(1,2)\"");
  cmd->add_flag("--save-all", o.save_all, "keep every visited permutation");
  cmd->add_flag("--quiet", o.quiet, "no progress or timing output");
}

int cmd_find_map(const Options& o, std::ostream& out, std::ostream& err) {
  const auto report = find_map(o, err);
  out << summary(report);
  if (!o.output.empty()) write_text(o.output, to_json(report).dump(2) + "\n");
  return 0;
}

int cmd_probs(Options o, std::ostream& out, std::ostream& err) {
  if (o.optimizer.empty() || o.optimizer == "bf") {
    o.save_all = true;
  } else if (!o.save_all) {
    throw InvalidArgument("probabilities under " + o.optimizer + " need --save-all");
  }
  o.probabilities = true;
  auto report = find_map(o, err);
  if (o.output.empty()) {
    out << probability_csv(report);
  } else if (ends_with_json(o.output)) {
    write_text(o.output, probability_json(report).dump(2) + "\n");
  } else {
    write_text(o.output, probability_csv(report));
  }
  return 0;
}

int cmd_project(const Options& o, std::ostream& out, std::ostream&) {
  if (o.perm.empty()) throw InvalidArgument("--perm is required");
  const auto in = load_input(o);
  const int n_eff = in.n - (in.mean_estimated ? 1 : 0);
  const auto sigma = Permutation::parse(o.perm, in.s.size());
  const auto est = mle_covariance(in.s, sigma, n_eff, in.n);
  if (o.output.empty()) {
    write_csv(out, est.sigma_hat.dense());
    return 0;
  }
  std::ostringstream csv;
  write_csv(csv, est.sigma_hat.dense());
  write_text(o.output, csv.str());
  const json report = {{"schema", "gips-estimate/1"},
                       {"permutation", est.subgroup.to_string()},
                       {"subgroup_order", est.subgroup.order()},
                       {"n", in.n},
                       {"n_eff", est.n_eff},
                       {"n0", est.n0},
                       {"dim", est.dim},
                       {"mle_exists", est.mle_exists},
                       {"criteria", criteria_json(est.criteria)},
                       {"sigma_hat", matrix_to_json(est.sigma_hat.dense())}};
  write_text(sidecar(o.output), report.dump(2) + "\n");
  if (!o.quiet) {
    out << "projection onto " << est.subgroup.to_string() << " (" << est.dim << " free parameters, n0 = " << est.n0
        << ", MLE " << (est.mle_exists ? "exists" : "does not exist") << ")\n";
    out << render_heatmap(est.sigma_hat);
  }
  return 0;
}

int cmd_threshold(const Options& o, std::ostream& out, std::ostream&) {
  if (o.input.empty()) throw InvalidArgument("--input is required");
  const auto sigma_hat = read_symmetric(o.input);
  const auto edges = threshold_partial_correlations(sigma_hat, *o.alpha);
  std::ostringstream csv;
  write_edges_csv(csv, edges);
  if (o.output.empty()) {
    out << csv.str();
    return 0;
  }
  write_text(o.output, csv.str());
  const auto p = static_cast<Eigen::Index>(sigma_hat.size());
  Eigen::MatrixXd adjacency = Eigen::MatrixXd::Zero(p, p);
  json list = json::array();
  for (const auto& e : edges) {
    adjacency(e.i, e.j) = adjacency(e.j, e.i) = 1.0;
    list.push_back({{"i", e.i + 1}, {"j", e.j + 1}, {"partial_correlation", e.partial_correlation}});
  }
  const json graph = {{"schema", "gips-graph/1"},
                      {"p", sigma_hat.size()},
                      {"alpha", *o.alpha},
                      {"edges", std::move(list)},
                      {"adjacency", matrix_to_json(adjacency)}};
  write_text(sidecar(o.output), graph.dump(2) + "\n");
  return 0;
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream&) {
  const auto sigma = o.perm.empty() ? Permutation::identity(*o.p) : Permutation::parse(o.perm, *o.p);
  const auto sc = simulate_scenario(sigma, static_cast<std::size_t>(*o.n), o.seed, o.shape);
  std::vector<std::string> header;
  for (std::size_t i = 1; i <= *o.p; ++i) header.push_back("x" + std::to_string(i));
  const std::string sigma_path = o.output + ".sigma.csv";
  const std::string data_path = o.output + ".data.csv";
  std::ostringstream sigma_csv, data_csv;
  write_csv(sigma_csv, sc.sigma_true.dense());
  write_csv(data_csv, sc.data, header);
  write_text(sigma_path, sigma_csv.str());
  write_text(data_path, data_csv.str());
  const json meta = {{"schema", "gips-simulation/1"},
                     {"p", *o.p},
                     {"n", *o.n},
                     {"seed", o.seed},
                     {"permutation", sigma.to_string()},
                     {"wishart_shape", o.shape.value_or(*o.p)},
                     {"ridge", sc.ridge},
                     {"rng", "mt19937_64 seeded by splitmix64; stream 1 wishart, stream 2 data; Box-Muller normals"},
                     {"sigma_true", std::filesystem::path(sigma_path).filename().string()},
                     {"data", std::filesystem::path(data_path).filename().string()}};
  write_text(o.output + ".json", meta.dump(2) + "\n");
  if (!o.quiet) {
    out << "wrote " << sigma_path << ", " << data_path << " and " << o.output << ".json\n";
    if (sc.ridge > 0.0) out << "sigma_true was repaired with ridge " << format_double(sc.ridge) << " * I\n";
  }
  return 0;
}

int cmd_constants(const Options& o, std::ostream& out, std::ostream&) {
  const auto sigma = Permutation::parse(o.perm, *o.p);
  const ColoredSpace space(sigma);
  const CyclicSubgroup group(sigma);
  const auto& c = space.constants();
  const auto lengths = cycle_decomposition(sigma).lengths();
  json blocks = json::array();
  for (std::size_t i = 0; i < c.block_count(); ++i) blocks.push_back({{"r", c.r[i]}, {"d", c.d[i]}});
  const json j = {{"permutation", sigma.to_string()},
                  {"generator", group.to_string()},
                  {"order", group.order()},
                  {"cycle_lengths", lengths},
                  {"n0", space.n0()},
                  {"dim", space.dimension()},
                  {"blocks", std::move(blocks)},
                  {"basis_orthogonality_error", space.basis().orthogonality_error()}};
  out << "permutation: " << sigma.to_string() << '\n';
  out << "canonical generator: " << group.to_string() << " (order " << group.order() << ")\n";
  out << "cycle lengths:";
  for (int l : lengths) out << ' ' << l;
  out << '\n';
  out << "n0: " << space.n0() << '\n';
  out << "dim: " << space.dimension() << '\n';
  out << "blocks (r, d):";
  for (std::size_t i = 0; i < c.block_count(); ++i) out << " (" << c.r[i] << ", " << c.d[i] << ")";
  out << '\n';
  out << "basis orthogonality error: " << format_double(space.basis().orthogonality_error()) << '\n';
  if (!o.output.empty()) write_text(o.output, j.dump(2) + "\n");
  return 0;
}

}  // namespace

LoadedInput load_input(const Options& o) {
  if (o.input.empty() == o.covariance.empty()) throw InvalidArgument("give exactly one of --input and --covariance");
  LoadedInput in;
  in.mean_estimated = !o.zero_mean;
  if (!o.input.empty()) {
    const auto csv = read_csv(o.input);
    const auto rows = static_cast<int>(csv.values.rows());
    if (o.n && *o.n != rows) {
      throw InvalidArgument("--n " + std::to_string(*o.n) + " disagrees with the " + std::to_string(rows) +
                            " rows of " + o.input);
    }
    if (in.mean_estimated && rows < 2) throw InvalidArgument("estimating the mean needs at least 2 observations");
    const auto sc = sample_covariance(csv.values, o.zero_mean);
    in.s = sc.s;
    in.n = rows;
  } else {
    if (!o.n) throw InvalidArgument("--covariance requires --n");
    if (in.mean_estimated && *o.n < 2) throw InvalidArgument("estimating the mean needs n >= 2");
    in.s = read_symmetric(o.covariance);
    in.n = *o.n;
  }
  return in;
}

GipsModel build_model(const Options& o, const LoadedInput& in) {
  std::optional<SymMatrix> d;
  if (o.d_scale) {
    if (!(*o.d_scale > 0.0)) throw InvalidArgument("--d-scale must be positive");
    d = SymMatrix::identity(in.s.size(), *o.d_scale);
  } else if (!o.d_matrix.empty()) {
    d = read_symmetric(o.d_matrix);
  }
  return GipsModel(in.s, in.n, in.mean_estimated, o.delta, d);
}

AnalysisReport find_map(const Options& o, std::ostream& err) {
  if (o.probabilities && !o.save_all) throw InvalidArgument("--probabilities requires --save-all");
  const auto in = load_input(o);
  const GipsModel model = build_model(o, in);
  const std::size_t p = model.size();
  const auto t0 = std::chrono::steady_clock::now();

  SearchResult result;
  std::optional<std::size_t> max_iter;
  std::optional<std::uint64_t> seed;
  if (!o.perm.empty()) {
    if (!o.optimizer.empty() || !o.start.empty() || o.max_iter || o.probabilities) {
      throw InvalidArgument("--perm evaluates a single permutation; it cannot be combined with a search");
    }
    const auto ev = log_posterior_quotient(model, Permutation::parse(o.perm, p));
    result.optimizer = "none";
    result.best = result.start = ev;
    result.evaluations = result.best_found_at = 1;
  } else {
    const std::string opt = o.optimizer.empty() ? (p <= 9 ? "bf" : "mh") : o.optimizer;
    std::optional<Permutation> start;
    if (!o.start.empty()) start = Permutation::parse(o.start, p);
    Progress progress(err, opt, !o.quiet);
    if (opt == "bf") {
      if (start || o.max_iter) throw InvalidArgument("bf enumerates every subgroup; --start and --max-iter do not apply");
      BruteForceOptions bo;
      bo.save_all = o.save_all;
      bo.progress = progress.callback();
      result = brute_force(model, bo);
    } else if (opt == "mh") {
      if (!o.max_iter) throw InvalidArgument("mh requires --max-iter");
      MetropolisHastingsOptions mo;
      mo.max_iter = *o.max_iter;
      mo.seed = o.seed;
      mo.start = start;
      mo.save_all = o.save_all;
      mo.progress = progress.callback();
      result = metropolis_hastings(model, mo);
      max_iter = o.max_iter;
      seed = o.seed;
    } else if (opt == "hc") {
      HillClimbOptions ho;
      ho.max_iter = o.max_iter;
      ho.start = start;
      ho.save_all = o.save_all;
      ho.progress = progress.callback();
      result = hill_climb(model, ho);
      max_iter = o.max_iter;
    } else {
      throw InvalidArgument("unknown optimizer \"" + opt + "\"");
    }
    progress.finish();
  }

  AnalysisReport r;
  r.p = p;
  r.n = model.n();
  r.n_eff = model.n_eff();
  r.mean_estimated = model.mean_estimated();
  r.delta = model.delta();
  r.d = model.d().dense();
  const auto& best = result.best;
  r.map_permutation = best.subgroup.to_string();
  r.subgroup_order = best.subgroup.order();
  r.log_posterior = best.log_quotient;
  r.start_permutation = result.start.subgroup.to_string();
  r.log_ratio_vs_start = best.log_quotient - result.start.log_quotient;
  const double identity_quotient = result.start.subgroup.generator().is_identity()
                                       ? result.start.log_quotient
                                       : log_posterior_quotient(model, Permutation::identity(p)).log_quotient;
  r.log_ratio_vs_identity = best.log_quotient - identity_quotient;

  const auto est = mle_covariance(model.s(), best.subgroup.generator(), model.n_eff(), model.n());
  r.n0 = est.n0;
  r.dim = est.dim;
  r.mle_exists = est.mle_exists;
  r.criteria = est.criteria;
  r.sigma_hat = est.sigma_hat.dense();

  r.run.optimizer = result.optimizer;
  r.run.evaluations = result.evaluations;
  r.run.best_found_at = result.best_found_at;
  r.run.acceptance_rate = result.acceptance_rate;
  r.run.seed = seed;
  r.run.max_iter = max_iter;
  if (o.probabilities) fill_probabilities(r, result);
  r.warnings = result.warnings;

  if (!o.quiet) {
    for (const auto& w : r.warnings) err << "warning: " << w << '\n';
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", elapsed.count());
    err << "elapsed: " << buf << " s\n";
  }
  return r;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bayesian selection of permutation-symmetry models for Gaussian covariance", "gips"};
  app.require_subcommand(1);
  Options o;

  auto* fm = app.add_subcommand("find-map", "search for the maximum a posteriori cyclic subgroup");
  add_input_options(fm, o);
  add_prior_options(fm, o);
  add_search_options(fm, o);
  fm->add_flag("--probabilities", o.probabilities, "include the posterior probability table (needs --save-all)");
  fm->add_option("--perm", o.perm, "evaluate this permutation only, without searching");
  fm->add_option("--output", o.output, "write the JSON report here");

  auto* pr = app.add_subcommand("probs", "posterior probability table (exact for bf, estimated otherwise)");
  add_input_options(pr, o);
  add_prior_options(pr, o);
  add_search_options(pr, o);
  pr->add_option("--output", o.output, "CSV, or JSON when the name ends in .json (default stdout CSV)");

  auto* pj = app.add_subcommand("project", "project S onto the space invariant under a permutation");
  add_input_options(pj, o);
  pj->add_option("--perm", o.perm, "permutation in cycle notation, e.g. \"(1,2)(3,4)\"")->required();
  pj->add_option("--output", o.output, "projected matrix CSV; a .report.json is written beside it");
  pj->add_flag("--quiet", o.quiet, "do not print the text rendering");

  auto* sm = app.add_subcommand("simulate", "draw a covariance with a given symmetry and sample data from it");
  sm->add_option("--p", o.p, "number of variables")->required()->check(CLI::PositiveNumber);
  sm->add_option("--perm", o.perm, "symmetry of the true covariance (default ())");
  sm->add_option("--n", o.n, "number of observations")->required()->check(CLI::PositiveNumber);
  sm->add_option("--seed", o.seed, "random seed (default 0)");
  sm->add_option("--shape", o.shape, "Wishart shape (default p)")->check(CLI::PositiveNumber);
  sm->add_option("--output", o.output, "prefix for <prefix>.sigma.csv, <prefix>.data.csv and <prefix>.json")
      ->required();
  sm->add_flag("--quiet", o.quiet, "no messages");

  auto* th = app.add_subcommand("threshold", "graph of partial correlations at least alpha in absolute value");
  th->add_option("--input", o.input, "CSV holding the estimated covariance")->required();
  th->add_option("--alpha", o.alpha, "threshold, >= 0")->required();
  th->add_option("--output", o.output, "edge CSV; a .report.json adjacency is written beside it");

  auto* ct = app.add_subcommand("constants", "structure constants and basis diagnostics for a permutation");
  ct->add_option("--p", o.p, "number of variables")->required()->check(CLI::PositiveNumber);
  ct->add_option("--perm", o.perm, "permutation in cycle notation")->required();
  ct->add_option("--output", o.output, "also write the diagnostics as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (fm->parsed()) return cmd_find_map(o, out, err);
    if (pr->parsed()) return cmd_probs(o, out, err);
    if (pj->parsed()) return cmd_project(o, out, err);
    if (sm->parsed()) return cmd_simulate(o, out, err);
    if (th->parsed()) return cmd_threshold(o, out, err);
    if (ct->parsed()) return cmd_constants(o, out, err);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return 3;
  } catch (const std::overflow_error& e) {
    err << "numeric error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("gips");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace gips::cli
