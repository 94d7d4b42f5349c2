#include "gips/search.hpp"

#include <optional>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>

#include "gips/colored_space.hpp"
#include "gips/errors.hpp"
#include "gips/random.hpp"

namespace gips {

namespace {

using Clock = std::chrono::steady_clock;

PosteriorEvaluation evaluate_canonical(const GipsModel& model, const Permutation& generator) {
  const ColoredSpace space(generator);
  PosteriorEvaluation ev;
  ev.subgroup = CyclicSubgroup(generator);
  ev.log_quotient = log_quotient(model, space);
  ev.n0 = space.n0();
  ev.dim = space.dimension();
  ev.mle_exists = model.n_eff() >= ev.n0;
  return ev;
}

Permutation start_or_identity(const std::optional<Permutation>& start, std::size_t p) {
  if (!start) return Permutation::identity(p);
  if (start->size() != p) throw InvalidArgument("start permutation has the wrong size");
  return *start;
}

}  // namespace

PosteriorEvaluation QuotientCache::evaluate(const Permutation& sigma) {
  const Permutation key = canonical_generator(sigma);
  {
    std::lock_guard lock(mutex_);
    if (auto it = table_.find(key); it != table_.end()) return it->second;
  }
  auto ev = evaluate_canonical(model_, key);
  std::lock_guard lock(mutex_);
  return table_.try_emplace(key, std::move(ev)).first->second;
}

std::size_t QuotientCache::size() const {
  std::lock_guard lock(mutex_);
  return table_.size();
}

SearchResult brute_force(const GipsModel& model, const BruteForceOptions& options) {
  const auto t0 = Clock::now();
  const std::size_t p = model.size();
  if (p > options.max_p && !options.allow_large_p) {
    throw InvalidArgument("brute force is limited to p <= " + std::to_string(options.max_p) + " (got p = " +
                          std::to_string(p) + "); pass the override to proceed anyway");
  }
  const auto subgroups = enumerate_cyclic_subgroups(p, options.allow_large_p ? p : options.max_p);

  std::vector<PosteriorEvaluation> results(subgroups.size());
  unsigned workers = options.workers ? options.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, subgroups.size()));

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  std::optional<PosteriorEvaluation> running_best;
  auto work = [&] {
    for (std::size_t i = next++; i < subgroups.size(); i = next++) {
      results[i] = evaluate_canonical(model, subgroups[i].generator());
      const std::size_t finished = ++done;
      if (options.progress) {
        std::lock_guard lock(progress_mutex);
        if (!running_best || results[i].log_quotient > running_best->log_quotient) running_best = results[i];
        if (finished % 1024 == 0 || finished == subgroups.size()) options.progress(finished, subgroups.size(), *running_best);
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  // Serial merge in enumeration order: strict '>' keeps the smallest generator on ties.
  SearchResult out;
  out.optimizer = "brute_force";
  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i) {
    if (results[i].log_quotient > results[best].log_quotient) best = i;
  }
  out.best = results[best];
  out.best_found_at = best + 1;
  out.start = results.front();  // enumeration order starts with the identity
  out.evaluations = results.size();
  if (options.save_all) {
    std::vector<Permutation> trace;
    trace.reserve(subgroups.size());
    for (const auto& g : subgroups) trace.push_back(g.generator());
    out.trace = std::move(trace);
    out.evaluated = std::move(results);
  }
  out.wall_time = Clock::now() - t0;
  return out;
}

SearchResult metropolis_hastings(const GipsModel& model, const MetropolisHastingsOptions& options) {
  const auto t0 = Clock::now();
  const std::size_t p = model.size();
  if (p < 2) throw InvalidArgument("Metropolis-Hastings needs p >= 2");
  if (options.max_iter < 2) throw InvalidArgument("Metropolis-Hastings needs max_iter >= 2");

  SearchResult out;
  out.optimizer = "metropolis_hastings";
  if (const double count = cyclic_subgroup_count(p); static_cast<double>(options.max_iter) > count) {
    std::ostringstream msg;
    msg << "max_iter = " << options.max_iter << " exceeds the number of cyclic subgroups (" << count
        << "); brute force is exact and cheaper here";
    out.warnings.push_back(msg.str());
  }

  Rng rng(options.seed);
  QuotientCache cache(model);
  const std::size_t pair_count = p * (p - 1) / 2;

  Permutation current = start_or_identity(options.start, p);
  PosteriorEvaluation current_eval = cache.evaluate(current);
  out.start = current_eval;
  out.best = current_eval;
  out.evaluations = 1;
  out.best_found_at = 1;

  std::vector<Permutation> trace;
  if (options.save_all) {
    trace.reserve(options.max_iter);
    trace.push_back(current);
  }

  std::size_t accepted = 0;
  for (std::size_t t = 1; t < options.max_iter; ++t) {
    const auto [i, j] = transposition_from_index(p, rng.uniform_index(pair_count));
    Permutation proposal = compose_with_transposition(current, i, j);
    const PosteriorEvaluation proposal_eval = cache.evaluate(proposal);
    ++out.evaluations;
    if (proposal_eval.log_quotient > out.best.log_quotient) {
      out.best = proposal_eval;
      out.best_found_at = out.evaluations;
    }

    const double log_ratio = proposal_eval.log_quotient - current_eval.log_quotient;
    const double u = rng.uniform01();
    if (u < std::exp(std::min(0.0, log_ratio))) {
      current = std::move(proposal);
      current_eval = proposal_eval;
      ++accepted;
    }
    if (options.save_all) trace.push_back(current);
    if (options.progress && (t % 1000 == 0 || t + 1 == options.max_iter)) {
      options.progress(t + 1, options.max_iter, out.best);
    }
  }

  out.acceptance_rate = static_cast<double>(accepted) / static_cast<double>(options.max_iter - 1);
  if (options.save_all) out.trace = std::move(trace);
  out.wall_time = Clock::now() - t0;
  return out;
}

SearchResult hill_climb(const GipsModel& model, const HillClimbOptions& options) {
  const auto t0 = Clock::now();
  const std::size_t p = model.size();
  if (p < 2) throw InvalidArgument("hill climbing needs p >= 2");

  SearchResult out;
  out.optimizer = "hill_climbing";
  QuotientCache cache(model);

  Permutation current = start_or_identity(options.start, p);
  out.start = cache.evaluate(current);
  out.best = out.start;
  out.evaluations = 1;
  out.best_found_at = 1;
  std::vector<Permutation> path{current};

  std::size_t moves = 0;
  while (!options.max_iter || moves < *options.max_iter) {
    std::optional<Permutation> best_neighbor;
    PosteriorEvaluation best_eval = out.best;
    for (int i = 0; i < static_cast<int>(p); ++i) {
      for (int j = i + 1; j < static_cast<int>(p); ++j) {
        Permutation neighbor = compose_with_transposition(current, i, j);
        const auto ev = cache.evaluate(neighbor);
        ++out.evaluations;
        if (ev.log_quotient > best_eval.log_quotient) {
          best_eval = ev;
          best_neighbor = std::move(neighbor);
        }
      }
    }
    if (!best_neighbor) break;
    current = std::move(*best_neighbor);
    out.best = best_eval;
    out.best_found_at = out.evaluations;
    path.push_back(current);
    ++moves;
    if (options.progress) options.progress(moves, options.max_iter.value_or(0), out.best);
  }

  if (options.save_all) out.trace = std::move(path);
  out.wall_time = Clock::now() - t0;
  return out;
}

ProbabilityEstimate estimate_probabilities(std::span<const Permutation> trace) {
  if (trace.empty()) throw InvalidArgument("cannot estimate probabilities from an empty trace");

  // Consecutive chain states repeat often; canonicalize each distinct one once.
  std::unordered_map<Permutation, Permutation> canonical_of;
  std::map<Permutation, std::size_t> visits;
  for (const auto& sigma : trace) {
    auto it = canonical_of.find(sigma);
    if (it == canonical_of.end()) it = canonical_of.emplace(sigma, canonical_generator(sigma)).first;
    ++visits[it->second];
  }

  ProbabilityEstimate est;
  double total = 0.0;
  for (const auto& [generator, count] : visits) {
    EstimatedProbability e;
    e.subgroup = CyclicSubgroup(generator);
    e.visits = count;
    e.weight = static_cast<double>(count) / static_cast<double>(euler_totient(e.subgroup.order()));
    total += e.weight;
    est.entries.push_back(std::move(e));
  }
  for (auto& e : est.entries) e.probability = e.weight / total;
  std::stable_sort(est.entries.begin(), est.entries.end(),
                   [](const auto& a, const auto& b) { return a.probability > b.probability; });
  return est;
}

}  // namespace gips
