#pragma once

#include <cstddef>
#include <vector>

#include "gips/linalg.hpp"
#include "gips/permutation.hpp"

namespace gips {

/// Block count L, multiplicities r_i and division degrees d_i (each 1 or 2)
/// of the block decomposition of a colored space. Blocks are listed in
/// increasing order of the frequency alpha / N.
struct StructureConstants {
  std::vector<int> r;
  std::vector<int> d;

  std::size_t block_count() const noexcept { return r.size(); }
  /// r_i * d_i
  std::vector<int> block_sizes() const;

  friend bool operator==(const StructureConstants&, const StructureConstants&) = default;
};

struct BlockDecomposition {
  std::vector<SymMatrix> blocks;
  OrthoMatrix basis;
  StructureConstants constants;
};

/// Everything derived from a single permutation sigma that the colored space
/// Z_<sigma> needs: pair orbits, orthogonal basis U and structure constants.
/// Immutable once built; safe to share between threads.
class ColoredSpace {
 public:
  explicit ColoredSpace(const Permutation& sigma);

  const Permutation& permutation() const noexcept { return sigma_; }
  std::size_t size() const noexcept { return sigma_.size(); }

  /// Orbits of unordered pairs {i, j} (i <= j), each sorted; orbits are
  /// ordered by their smallest pair.
  const std::vector<std::vector<IndexPair>>& orbits() const noexcept { return orbits_; }

  /// dim Z_<sigma>: number of pair orbits.
  std::size_t dimension() const noexcept { return orbits_.size(); }

  /// Number of cycles of sigma, fixed points included. This is the smallest
  /// sample size for which the MLE exists.
  int n0() const noexcept { return cycle_count_; }

  const StructureConstants& constants() const noexcept { return constants_; }
  const OrthoMatrix& basis() const noexcept { return basis_; }

  /// Orbit averaging. Every entry of an orbit receives the same computed mean.
  SymMatrix project(const SymMatrix& s) const;

  /// Diagonal blocks of U^T pi(S) U. Throws InternalError when the
  /// off-block part exceeds leakage_tol * ||pi(S)||_F.
  std::vector<SymMatrix> blocks(const SymMatrix& s, double leakage_tol = 1e-8) const;

  BlockDecomposition decompose(const SymMatrix& s, double leakage_tol = 1e-8) const;

 private:
  Permutation sigma_;
  int cycle_count_ = 0;
  std::vector<std::vector<IndexPair>> orbits_;
  StructureConstants constants_;
  OrthoMatrix basis_;
};

SymMatrix project(const SymMatrix& s, const Permutation& sigma);
std::size_t dimension(const Permutation& sigma);
int n0(const Permutation& sigma);
OrthoMatrix build_basis(const Permutation& sigma);
StructureConstants structure_constants(const Permutation& sigma);
BlockDecomposition block_decompose(const SymMatrix& s, const Permutation& sigma);

}  // namespace gips
