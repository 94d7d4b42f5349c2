#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace gips {

/// Seedable random stream with a pinned algorithm.
///
/// Engine: std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The engine is seeded with SplitMix64(seed ^ SplitMix64(stream)).
/// Variates do not use <random> distributions (their algorithms are
/// implementation-defined):
///   uniform01      (x >> 11) * 2^-53
///   uniform_index  rejection sampling on the top bits
///   normal         Box-Muller, both outputs used in order (cos first)
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  /// Independent stream derived from the same seed.
  Rng split(std::uint64_t stream) const { return Rng(seed_, stream); }

  std::uint64_t next_u64() { return engine_(); }
  double uniform01();
  /// Uniform on {0, ..., n - 1}; n >= 1.
  std::uint64_t uniform_index(std::uint64_t n);
  double normal();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace gips
