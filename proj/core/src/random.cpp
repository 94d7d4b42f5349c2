#include "gips/random.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "gips/errors.hpp"

namespace gips {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), engine_(splitmix64(seed ^ splitmix64(stream))) {}

double Rng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::uniform_index(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("uniform_index needs n >= 1");
  if (n == 1) return 0;
  // Smallest all-ones mask covering n - 1; reject draws outside [0, n).
  const std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(n - 1);
  while (true) {
    const std::uint64_t x = engine_() & mask;
    if (x < n) return x;
  }
}

double Rng::normal() {
  if (spare_normal_) {
    const double z = *spare_normal_;
    spare_normal_.reset();
    return z;
  }
  const double u1 = 1.0 - uniform01();  // (0, 1]
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_normal_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

}  // namespace gips
