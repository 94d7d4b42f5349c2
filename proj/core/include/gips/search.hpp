#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "gips/permutation.hpp"
#include "gips/posterior.hpp"

namespace gips {

/// Called with (steps done, total steps, best so far). Total is 0 when
/// unbounded.
using ProgressCallback = std::function<void(std::size_t, std::size_t, const PosteriorEvaluation&)>;

struct SearchResult {
  std::string optimizer;
  PosteriorEvaluation best;
  /// Evaluation of the starting permutation (identity for brute force).
  PosteriorEvaluation start;
  /// Number of posterior quotient computations requested (cache hits included).
  std::size_t evaluations = 0;
  /// Evaluation count at which `best` was first seen.
  std::size_t best_found_at = 0;
  /// Visited permutations: the chain states for MH, the accepted path for
  /// hill climbing, the enumerated generators for brute force.
  std::optional<std::vector<Permutation>> trace;
  /// Brute force with save_all: every subgroup with its quotient.
  std::vector<PosteriorEvaluation> evaluated;
  std::optional<double> acceptance_rate;
  std::chrono::duration<double> wall_time{};
  std::vector<std::string> warnings;
};

/// Memoizes posterior evaluations by canonical subgroup. Thread-safe.
class QuotientCache {
 public:
  explicit QuotientCache(const GipsModel& model) : model_(model) {}

  PosteriorEvaluation evaluate(const Permutation& sigma);
  std::size_t size() const;

 private:
  const GipsModel& model_;
  mutable std::mutex mutex_;
  std::unordered_map<Permutation, PosteriorEvaluation> table_;
};

struct BruteForceOptions {
  std::size_t max_p = 9;
  /// Lifts the max_p guard.
  bool allow_large_p = false;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned workers = 0;
  bool save_all = false;
  ProgressCallback progress;
};

/// Evaluates every cyclic subgroup once. The best subgroup is the one with
/// the largest quotient, ties going to the smallest canonical generator. The
/// result does not depend on the number of workers.
SearchResult brute_force(const GipsModel& model, const BruteForceOptions& options = {});

struct MetropolisHastingsOptions {
  std::size_t max_iter = 0;
  std::uint64_t seed = 0;
  std::optional<Permutation> start;
  bool save_all = false;
  ProgressCallback progress;
};

/// Random-transposition Metropolis-Hastings over S_p.
///
/// The chain starts at `start` (identity by default) and makes max_iter - 1
/// moves, so the trace holds max_iter states. Each step draws a transposition
/// index uniformly and then one uniform01 for the acceptance test, in that
/// order. Rejected proposals still count as visited for the best-so-far.
SearchResult metropolis_hastings(const GipsModel& model, const MetropolisHastingsOptions& options);

struct HillClimbOptions {
  /// Maximum number of moves; unbounded when empty.
  std::optional<std::size_t> max_iter;
  std::optional<Permutation> start;
  bool save_all = false;
  ProgressCallback progress;
};

/// Steepest ascent over the neighbors sigma * (i j). Moves only on strict
/// improvement; among equal best neighbors the smallest (i, j) wins.
SearchResult hill_climb(const GipsModel& model, const HillClimbOptions& options = {});

struct EstimatedProbability {
  CyclicSubgroup subgroup;
  std::size_t visits = 0;
  /// visits / phi(#subgroup)
  double weight = 0.0;
  double probability = 0.0;
};

/// Totient-corrected visit frequencies, sorted by decreasing probability.
struct ProbabilityEstimate {
  std::vector<EstimatedProbability> entries;
};

ProbabilityEstimate estimate_probabilities(std::span<const Permutation> trace);

}  // namespace gips
