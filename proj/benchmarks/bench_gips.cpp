#include <benchmark/benchmark.h>

#include <numeric>

#include "gips/gips.hpp"

namespace {

gips::SymMatrix random_spd(std::size_t p, std::uint64_t seed) {
  gips::Rng rng(seed);
  const auto k = static_cast<Eigen::Index>(p + 2);
  Eigen::MatrixXd g(k, static_cast<Eigen::Index>(p));
  for (Eigen::Index r = 0; r < g.rows(); ++r) {
    for (Eigen::Index c = 0; c < g.cols(); ++c) g(r, c) = rng.normal();
  }
  return gips::SymMatrix::symmetrize(g.transpose() * g / static_cast<double>(k) +
                                     0.1 * Eigen::MatrixXd::Identity(g.cols(), g.cols()));
}

gips::Permutation random_permutation(std::size_t p, std::uint64_t seed) {
  gips::Rng rng(seed);
  std::vector<int> image(p);
  std::iota(image.begin(), image.end(), 0);
  for (std::size_t i = p; i > 1; --i) std::swap(image[i - 1], image[rng.uniform_index(i)]);
  return gips::Permutation(image);
}

void BM_LogPosteriorQuotient(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const gips::GipsModel model(random_spd(p, 1), 58, true);
  const auto sigma = random_permutation(p, 2);
  for (auto _ : state) benchmark::DoNotOptimize(gips::log_posterior_quotient(model, sigma));
}
BENCHMARK(BM_LogPosteriorQuotient)->Arg(10)->Arg(50)->Arg(150)->Unit(benchmark::kMicrosecond);

void BM_CanonicalGenerator(benchmark::State& state) {
  const auto sigma = random_permutation(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(gips::canonical_generator(sigma));
}
BENCHMARK(BM_CanonicalGenerator)->Arg(10)->Arg(150);

void BM_Projection(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const gips::ColoredSpace space(random_permutation(p, 4));
  const auto s = random_spd(p, 5);
  for (auto _ : state) benchmark::DoNotOptimize(space.project(s));
}
BENCHMARK(BM_Projection)->Arg(10)->Arg(150);

void BM_BruteForce(benchmark::State& state) {
  const gips::GipsModel model(random_spd(static_cast<std::size_t>(state.range(0)), 6), 20, true);
  gips::BruteForceOptions opt;
  opt.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(gips::brute_force(model, opt));
}
BENCHMARK(BM_BruteForce)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_MetropolisHastings(benchmark::State& state) {
  const gips::GipsModel model(random_spd(20, 7), 30, true);
  gips::MetropolisHastingsOptions opt;
  opt.max_iter = 1000;
  opt.seed = 8;
  for (auto _ : state) benchmark::DoNotOptimize(gips::metropolis_hastings(model, opt));
}
BENCHMARK(BM_MetropolisHastings)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
