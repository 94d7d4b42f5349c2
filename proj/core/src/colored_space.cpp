#include "gips/colored_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "gips/errors.hpp"

namespace gips {

namespace {

// Non-negative fraction num/den, compared exactly by cross-multiplication.
struct Fraction {
  long long num = 0;
  long long den = 1;

  friend bool operator<(const Fraction& a, const Fraction& b) { return a.num * b.den < b.num * a.den; }
  friend bool operator==(const Fraction& a, const Fraction& b) { return a.num * b.den == b.num * a.den; }
};

struct BasisColumn {
  Fraction frequency;  // floor(k/2) / p_c
  std::size_t cycle = 0;
  int k = 1;           // 1-based index within the cycle
  Eigen::VectorXd v;
};

bool column_before(const BasisColumn& a, const BasisColumn& b) {
  if (a.frequency < b.frequency) return true;
  if (b.frequency < a.frequency) return false;
  if (a.cycle != b.cycle) return a.cycle < b.cycle;
  return (a.k % 2 == 0) && (b.k % 2 == 1);
}

std::vector<std::vector<IndexPair>> compute_orbits(const Permutation& sigma) {
  const std::size_t p = sigma.size();
  std::vector<char> visited(p * p, 0);
  std::vector<std::vector<IndexPair>> orbits;
  for (int i = 0; i < static_cast<int>(p); ++i) {
    for (int j = i; j < static_cast<int>(p); ++j) {
      if (visited[static_cast<std::size_t>(i) * p + static_cast<std::size_t>(j)]) continue;
      std::vector<IndexPair> orbit;
      int a = i, b = j;
      do {
        const IndexPair e = a <= b ? IndexPair{a, b} : IndexPair{b, a};
        auto& mark = visited[static_cast<std::size_t>(e.first) * p + static_cast<std::size_t>(e.second)];
        if (!mark) {
          mark = 1;
          orbit.push_back(e);
        }
        a = sigma(a);
        b = sigma(b);
      } while (a != i || b != j);
      std::sort(orbit.begin(), orbit.end());
      orbits.push_back(std::move(orbit));
    }
  }
  return orbits;
}

StructureConstants compute_constants(const CycleDecomposition& dec) {
  // alpha / N ranges over the fractions j / l in [0, 1/2] for every cycle
  // length l; r_alpha counts cycles c with p_c * alpha / N integral.
  const auto lengths = dec.lengths();
  std::vector<Fraction> freqs;
  for (int len : lengths) {
    for (int j = 0; 2 * j <= len; ++j) {
      const int g = std::gcd(j, len);
      freqs.push_back({j / g, len / g});
    }
  }
  std::sort(freqs.begin(), freqs.end());
  freqs.erase(std::unique(freqs.begin(), freqs.end()), freqs.end());

  StructureConstants sc;
  for (const auto& f : freqs) {
    int r = 0;
    for (int len : lengths) {
      if ((static_cast<long long>(len) * f.num) % f.den == 0) ++r;
    }
    const bool real_block = f.num == 0 || 2 * f.num == f.den;
    sc.r.push_back(r);
    sc.d.push_back(real_block ? 1 : 2);
  }
  return sc;
}

std::vector<BasisColumn> basis_columns(const CycleDecomposition& dec, std::size_t p) {
  std::vector<BasisColumn> cols;
  cols.reserve(p);
  for (std::size_t c = 0; c < dec.cycles.size(); ++c) {
    const auto& cycle = dec.cycles[c];  // cycle[m] = sigma^m(i_c), i_c = min element
    const int pc = static_cast<int>(cycle.size());
    for (int k = 1; k <= pc; ++k) {
      BasisColumn col;
      col.frequency = {k / 2, pc};
      col.cycle = c;
      col.k = k;
      col.v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p));
      for (int m = 0; m < pc; ++m) {
        double value;
        if (k == 1) {
          value = std::sqrt(1.0 / pc);
        } else if (k == pc && pc % 2 == 0) {
          value = std::sqrt(1.0 / pc) * (m % 2 == 0 ? 1.0 : -1.0);
        } else if (k % 2 == 0) {
          const int beta = k / 2;
          value = std::sqrt(2.0 / pc) * std::cos(2.0 * std::numbers::pi * beta * m / pc);
        } else {
          const int beta = (k - 1) / 2;
          value = std::sqrt(2.0 / pc) * std::sin(2.0 * std::numbers::pi * beta * m / pc);
        }
        col.v(cycle[static_cast<std::size_t>(m)]) = value;
      }
      cols.push_back(std::move(col));
    }
  }
  std::stable_sort(cols.begin(), cols.end(), column_before);
  return cols;
}

}  // namespace

std::vector<int> StructureConstants::block_sizes() const {
  std::vector<int> out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = r[i] * d[i];
  return out;
}

ColoredSpace::ColoredSpace(const Permutation& sigma) : sigma_(sigma) {
  const auto dec = cycle_decomposition(sigma_);
  cycle_count_ = static_cast<int>(dec.count());
  orbits_ = compute_orbits(sigma_);
  constants_ = compute_constants(dec);

  const auto cols = basis_columns(dec, sigma_.size());
  Eigen::MatrixXd u(static_cast<Eigen::Index>(sigma_.size()), static_cast<Eigen::Index>(sigma_.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) u.col(static_cast<Eigen::Index>(i)) = cols[i].v;
  basis_ = OrthoMatrix::from_dense(std::move(u));

  // The column groups of equal frequency must line up with the blocks.
  std::vector<int> group_sizes;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i == 0 || !(cols[i].frequency == cols[i - 1].frequency)) group_sizes.push_back(0);
    ++group_sizes.back();
  }
  if (group_sizes != constants_.block_sizes()) {
    throw InternalError("basis column groups do not match structure constants for " + sigma_.to_string());
  }
}

SymMatrix ColoredSpace::project(const SymMatrix& s) const {
  if (s.size() != size()) throw InvalidArgument("dimension mismatch in projection");
  SymMatrix out(size());
  for (const auto& orbit : orbits_) {
    double acc = 0.0;
    for (const auto& [i, j] : orbit) acc += s(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    const double mean = acc / static_cast<double>(orbit.size());
    for (const auto& [i, j] : orbit) out.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j), mean);
  }
  return out;
}

std::vector<SymMatrix> ColoredSpace::blocks(const SymMatrix& s, double leakage_tol) const {
  const SymMatrix projected = project(s);
  const Eigen::MatrixXd x = conjugate(basis_, projected).dense();
  const double bound = leakage_tol * projected.frobenius_norm();

  std::vector<SymMatrix> out;
  out.reserve(constants_.block_count());
  double leakage = 0.0;
  Eigen::Index offset = 0;
  for (int size : constants_.block_sizes()) {
    const Eigen::Index end = offset + size;
    for (Eigen::Index col = offset; col < end; ++col) {
      for (Eigen::Index row = end; row < x.rows(); ++row) leakage = std::max(leakage, std::abs(x(row, col)));
    }
    out.push_back(SymMatrix::symmetrize(x.block(offset, offset, size, size)));
    offset = end;
  }
  if (leakage > bound) {
    std::ostringstream msg;
    msg << "block decomposition leakage " << leakage << " exceeds " << bound << " for " << sigma_.to_string();
    throw InternalError(msg.str());
  }
  return out;
}

BlockDecomposition ColoredSpace::decompose(const SymMatrix& s, double leakage_tol) const {
  return {blocks(s, leakage_tol), basis_, constants_};
}

SymMatrix project(const SymMatrix& s, const Permutation& sigma) { return ColoredSpace(sigma).project(s); }
std::size_t dimension(const Permutation& sigma) { return ColoredSpace(sigma).dimension(); }
int n0(const Permutation& sigma) { return static_cast<int>(cycle_decomposition(sigma).count()); }
OrthoMatrix build_basis(const Permutation& sigma) { return ColoredSpace(sigma).basis(); }
StructureConstants structure_constants(const Permutation& sigma) { return ColoredSpace(sigma).constants(); }
BlockDecomposition block_decompose(const SymMatrix& s, const Permutation& sigma) {
  return ColoredSpace(sigma).decompose(s);
}

}  // namespace gips
