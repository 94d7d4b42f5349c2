#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gips {

/// A bijection on {0..p-1}. User-facing text is 1-based; everything in this
/// class is 0-based.
///
/// Composition follows (a * b)(i) = a(b(i)). Ordering is lexicographic on the
/// one-line image (a(0), ..., a(p-1)); permutations of different sizes compare
/// by size first.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t p);
  explicit Permutation(std::vector<int> image);

  static Permutation identity(std::size_t p) { return Permutation(p); }
  static Permutation transposition(std::size_t p, int i, int j);

  /// Parses cycle notation. Accepts "()", "(1,2)(3,4)" and the compact
  /// digit-per-element form "(12345)" (only meaningful for p <= 9).
  static Permutation parse(std::string_view text, std::size_t p);

  std::size_t size() const noexcept { return image_.size(); }
  int operator()(int i) const { return image_[static_cast<std::size_t>(i)]; }
  std::span<const int> image() const noexcept { return image_; }

  bool is_identity() const noexcept;
  Permutation inverse() const;
  Permutation pow(std::int64_t k) const;

  friend Permutation operator*(const Permutation& lhs, const Permutation& rhs);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend std::strong_ordering operator<=>(const Permutation& lhs, const Permutation& rhs);

  /// Comma-separated 1-based cycle notation, fixed points omitted, "()" for
  /// the identity. Cycles start at their minimal element.
  std::string to_string() const;

 private:
  std::vector<int> image_;
};

struct CycleDecomposition {
  /// Each cycle starts at its minimal element; cycles are sorted by it.
  /// Fixed points are included as length-1 cycles.
  std::vector<std::vector<int>> cycles;

  std::size_t count() const noexcept { return cycles.size(); }
  std::vector<int> lengths() const;
};

CycleDecomposition cycle_decomposition(const Permutation& sigma);

/// Order of <sigma>: lcm of cycle lengths. Throws std::overflow_error when
/// the order does not fit in 64 bits.
std::uint64_t subgroup_order(const Permutation& sigma);

std::uint64_t euler_totient(std::uint64_t n);

/// Canonical key of a cyclic subgroup: the lexicographically smallest
/// generator together with the group order.
class CyclicSubgroup {
 public:
  CyclicSubgroup() = default;
  explicit CyclicSubgroup(const Permutation& any_generator);

  const Permutation& generator() const noexcept { return generator_; }
  std::uint64_t order() const noexcept { return order_; }
  std::size_t size() const noexcept { return generator_.size(); }
  std::string to_string() const { return generator_.to_string(); }

  friend bool operator==(const CyclicSubgroup& a, const CyclicSubgroup& b) {
    return a.generator_ == b.generator_;
  }
  friend std::strong_ordering operator<=>(const CyclicSubgroup& a, const CyclicSubgroup& b) {
    return a.generator_ <=> b.generator_;
  }

 private:
  Permutation generator_;
  std::uint64_t order_ = 1;
};

/// Smallest generator of <sigma> among sigma^k with gcd(k, N) = 1.
///
/// Runs in O(p^2) without iterating over powers: sigma^k acts on a cycle of
/// length l as rotation by k mod l, so the residues can be chosen greedily
/// cycle by cycle (in order of minimal element) subject to CRT consistency.
Permutation canonical_generator(const Permutation& sigma);

/// Every cyclic subgroup of S_p, once, sorted by canonical generator.
/// Iterates all p! permutations; refuses p > max_p.
std::vector<CyclicSubgroup> enumerate_cyclic_subgroups(std::size_t p, std::size_t max_p = 9);

/// |{<sigma> : sigma in S_p}| computed from cycle types, without enumeration.
/// Exact as long as the value is below 2^53; grows super-exponentially.
double cyclic_subgroup_count(std::size_t p);

using IndexPair = std::pair<int, int>;  // first <= second

/// {{sigma^k(i), sigma^k(j)} : k >= 0}, sorted.
std::vector<IndexPair> pair_orbit(const Permutation& sigma, IndexPair pair);

/// sigma * (i j)
Permutation compose_with_transposition(const Permutation& sigma, int i, int j);

/// Maps t in [0, p(p-1)/2) to the t-th pair (i < j) in lexicographic order.
IndexPair transposition_from_index(std::size_t p, std::size_t t);

}  // namespace gips

template <>
struct std::hash<gips::Permutation> {
  std::size_t operator()(const gips::Permutation& perm) const noexcept;
};

template <>
struct std::hash<gips::CyclicSubgroup> {
  std::size_t operator()(const gips::CyclicSubgroup& g) const noexcept {
    return std::hash<gips::Permutation>{}(g.generator());
  }
};
