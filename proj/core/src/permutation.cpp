#include "gips/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "gips/errors.hpp"

namespace gips {

namespace {

std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t g = std::gcd(a, b);
  const std::uint64_t q = a / g;
  if (q != 0 && b > std::numeric_limits<std::uint64_t>::max() / q) {
    throw std::overflow_error("cyclic subgroup order exceeds 64 bits");
  }
  return q * b;
}

// Inverse of a modulo m, gcd(a, m) = 1, m >= 1.
std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t old_r = a % m, r = m, old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - q * r};
    std::tie(old_s, s) = std::pair{s, old_s - q * s};
  }
  old_s %= m;
  return old_s < 0 ? old_s + m : old_s;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int parse_index(std::string_view token, std::size_t p, std::string_view text) {
  token = trim(token);
  int value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc{} || ptr != end) {
    throw InvalidArgument("malformed cycle notation '" + std::string(text) + "'");
  }
  if (value < 1 || static_cast<std::size_t>(value) > p) {
    throw InvalidArgument("index " + std::to_string(value) + " out of range 1.." +
                          std::to_string(p) + " in '" + std::string(text) + "'");
  }
  return value - 1;
}

}  // namespace

Permutation::Permutation(std::size_t p) : image_(p) {
  std::iota(image_.begin(), image_.end(), 0);
}

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (int v : image_) {
    if (v < 0 || static_cast<std::size_t>(v) >= image_.size() || seen[static_cast<std::size_t>(v)]) {
      throw InvalidArgument("image is not a bijection");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::transposition(std::size_t p, int i, int j) {
  if (i == j) throw InvalidArgument("transposition needs two distinct indices");
  if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= p || static_cast<std::size_t>(j) >= p) {
    throw InvalidArgument("transposition index out of range");
  }
  Permutation t(p);
  std::swap(t.image_[static_cast<std::size_t>(i)], t.image_[static_cast<std::size_t>(j)]);
  return t;
}

Permutation Permutation::parse(std::string_view text, std::size_t p) {
  if (p == 0) throw InvalidArgument("permutation size must be positive");
  const std::string_view body = trim(text);
  Permutation result(p);
  if (body.empty() || body == "()") return result;

  std::vector<bool> used(p, false);
  std::size_t pos = 0;
  while (pos < body.size()) {
    if (std::isspace(static_cast<unsigned char>(body[pos]))) {
      ++pos;
      continue;
    }
    if (body[pos] != '(') throw InvalidArgument("malformed cycle notation '" + std::string(text) + "'");
    const std::size_t close = body.find(')', pos);
    if (close == std::string_view::npos) {
      throw InvalidArgument("unterminated cycle in '" + std::string(text) + "'");
    }
    const std::string_view content = trim(body.substr(pos + 1, close - pos - 1));
    if (content.empty() || content.find('(') != std::string_view::npos) {
      throw InvalidArgument("malformed cycle notation '" + std::string(text) + "'");
    }

    std::vector<int> cycle;
    if (content.find(',') != std::string_view::npos) {
      std::size_t start = 0;
      while (true) {
        const std::size_t comma = content.find(',', start);
        cycle.push_back(parse_index(content.substr(start, comma - start), p, text));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
    } else if (p <= 9 && content.size() > 1) {
      for (char c : content) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
          throw InvalidArgument("malformed cycle notation '" + std::string(text) + "'");
        }
        cycle.push_back(parse_index(std::string_view(&c, 1), p, text));
      }
    } else {
      cycle.push_back(parse_index(content, p, text));
    }

    for (int v : cycle) {
      if (used[static_cast<std::size_t>(v)]) {
        throw InvalidArgument("index " + std::to_string(v + 1) + " repeated in '" + std::string(text) + "'");
      }
      used[static_cast<std::size_t>(v)] = true;
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      result.image_[static_cast<std::size_t>(cycle[k])] = cycle[(k + 1) % cycle.size()];
    }
    pos = close + 1;
  }
  return result;
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < image_.size(); ++i) {
    if (image_[i] != static_cast<int>(i)) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  Permutation inv(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) {
    inv.image_[static_cast<std::size_t>(image_[i])] = static_cast<int>(i);
  }
  return inv;
}

Permutation Permutation::pow(std::int64_t k) const {
  // Rotate each cycle by k positions.
  Permutation result(image_.size());
  for (const auto& cycle : cycle_decomposition(*this).cycles) {
    const auto len = static_cast<std::int64_t>(cycle.size());
    const std::int64_t shift = ((k % len) + len) % len;
    for (std::int64_t i = 0; i < len; ++i) {
      result.image_[static_cast<std::size_t>(cycle[static_cast<std::size_t>(i)])] =
          cycle[static_cast<std::size_t>((i + shift) % len)];
    }
  }
  return result;
}

Permutation operator*(const Permutation& lhs, const Permutation& rhs) {
  if (lhs.size() != rhs.size()) throw InvalidArgument("composing permutations of different sizes");
  Permutation out(lhs.size());
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    out.image_[i] = lhs.image_[static_cast<std::size_t>(rhs.image_[i])];
  }
  return out;
}

std::strong_ordering operator<=>(const Permutation& lhs, const Permutation& rhs) {
  if (auto c = lhs.size() <=> rhs.size(); c != 0) return c;
  return lhs.image_ <=> rhs.image_;
}

std::string Permutation::to_string() const {
  std::string out;
  for (const auto& cycle : cycle_decomposition(*this).cycles) {
    if (cycle.size() < 2) continue;
    out += '(';
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      if (k) out += ',';
      out += std::to_string(cycle[k] + 1);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

std::vector<int> CycleDecomposition::lengths() const {
  std::vector<int> out;
  out.reserve(cycles.size());
  for (const auto& c : cycles) out.push_back(static_cast<int>(c.size()));
  return out;
}

CycleDecomposition cycle_decomposition(const Permutation& sigma) {
  CycleDecomposition dec;
  std::vector<bool> seen(sigma.size(), false);
  for (std::size_t start = 0; start < sigma.size(); ++start) {
    if (seen[start]) continue;
    std::vector<int> cycle;
    for (int i = static_cast<int>(start); !seen[static_cast<std::size_t>(i)]; i = sigma(i)) {
      seen[static_cast<std::size_t>(i)] = true;
      cycle.push_back(i);
    }
    dec.cycles.push_back(std::move(cycle));
  }
  return dec;
}

std::uint64_t subgroup_order(const Permutation& sigma) {
  std::uint64_t n = 1;
  for (int len : cycle_decomposition(sigma).lengths()) n = checked_lcm(n, static_cast<std::uint64_t>(len));
  return n;
}

std::uint64_t euler_totient(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("totient of zero");
  std::uint64_t result = n;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      while (n % q == 0) n /= q;
      result -= result / q;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

Permutation canonical_generator(const Permutation& sigma) {
  const auto dec = cycle_decomposition(sigma);
  std::vector<int> image(sigma.size());

  // Exponent k is pinned as k = residue (mod modulus).
  std::int64_t modulus = 1;
  std::int64_t residue = 0;
  for (const auto& cycle : dec.cycles) {
    const auto len = static_cast<std::int64_t>(cycle.size());
    const std::int64_t g = std::gcd(len, modulus);

    std::int64_t best_shift = -1;
    for (std::int64_t t = 0; t < len; ++t) {
      if (t % g != residue % g || std::gcd(t, len) != 1) continue;
      if (best_shift < 0 || cycle[static_cast<std::size_t>(t)] < cycle[static_cast<std::size_t>(best_shift)]) {
        best_shift = t;
      }
    }
    // Units mod len always surject onto units mod g, so a shift exists.
    for (std::int64_t i = 0; i < len; ++i) {
      image[static_cast<std::size_t>(cycle[static_cast<std::size_t>(i)])] =
          cycle[static_cast<std::size_t>((i + best_shift) % len)];
    }

    // CRT: k = residue (mod modulus), k = best_shift (mod len).
    const std::int64_t lg = len / g;
    if (lg > 1) {
      std::int64_t new_modulus = 0;
      if (__builtin_mul_overflow(modulus, lg, &new_modulus)) {
        throw std::overflow_error("cyclic subgroup order exceeds 64 bits");
      }
      const std::int64_t diff = (((best_shift - residue) % len + len) % len) / g;
      const std::int64_t x = (diff * mod_inverse((modulus / g) % lg, lg)) % lg;
      residue += modulus * x;  // < new_modulus
      modulus = new_modulus;
    }
  }
  return Permutation(std::move(image));
}

CyclicSubgroup::CyclicSubgroup(const Permutation& any_generator)
    : generator_(canonical_generator(any_generator)), order_(subgroup_order(any_generator)) {}

std::vector<CyclicSubgroup> enumerate_cyclic_subgroups(std::size_t p, std::size_t max_p) {
  if (p == 0) throw InvalidArgument("enumeration needs p >= 1");
  if (p > max_p) {
    throw InvalidArgument("refusing to enumerate cyclic subgroups for p = " + std::to_string(p) +
                          " (limit " + std::to_string(max_p) + "); use Metropolis-Hastings instead");
  }
  std::vector<int> image(p);
  std::iota(image.begin(), image.end(), 0);
  std::unordered_set<Permutation> seen;
  do {
    seen.insert(canonical_generator(Permutation(image)));
  } while (std::next_permutation(image.begin(), image.end()));

  std::vector<Permutation> gens(seen.begin(), seen.end());
  std::sort(gens.begin(), gens.end());
  std::vector<CyclicSubgroup> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.emplace_back(g);
  return out;
}

namespace {

// Sum over partitions of `remaining` with parts <= max_part of
// p!/prod(l^m_l m_l!) / phi(lcm).
void accumulate_cycle_types(int remaining, int max_part, std::vector<int>& parts, long double& total,
                            int p) {
  if (remaining == 0) {
    long double count = std::tgamma(static_cast<long double>(p) + 1.0L);
    std::uint64_t order = 1;
    std::size_t i = 0;
    while (i < parts.size()) {
      std::size_t j = i;
      while (j < parts.size() && parts[j] == parts[i]) ++j;
      const auto mult = static_cast<long double>(j - i);
      count /= std::pow(static_cast<long double>(parts[i]), mult) * std::tgamma(mult + 1.0L);
      order = checked_lcm(order, static_cast<std::uint64_t>(parts[i]));
      i = j;
    }
    total += count / static_cast<long double>(euler_totient(order));
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    parts.push_back(part);
    accumulate_cycle_types(remaining - part, part, parts, total, p);
    parts.pop_back();
  }
}

}  // namespace

double cyclic_subgroup_count(std::size_t p) {
  if (p == 0) throw InvalidArgument("p must be positive");
  if (p > 60) return std::numeric_limits<double>::infinity();
  long double total = 0.0L;
  std::vector<int> parts;
  accumulate_cycle_types(static_cast<int>(p), static_cast<int>(p), parts, total, static_cast<int>(p));
  return static_cast<double>(std::round(total));
}

std::vector<IndexPair> pair_orbit(const Permutation& sigma, IndexPair pair) {
  const auto p = static_cast<int>(sigma.size());
  if (pair.first < 0 || pair.second < 0 || pair.first >= p || pair.second >= p) {
    throw InvalidArgument("pair index out of range");
  }
  auto normalize = [](int a, int b) { return a <= b ? IndexPair{a, b} : IndexPair{b, a}; };
  std::vector<IndexPair> orbit;
  int a = pair.first, b = pair.second;
  do {
    orbit.push_back(normalize(a, b));
    a = sigma(a);
    b = sigma(b);
  } while (a != pair.first || b != pair.second);
  std::sort(orbit.begin(), orbit.end());
  orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
  return orbit;
}

Permutation compose_with_transposition(const Permutation& sigma, int i, int j) {
  return sigma * Permutation::transposition(sigma.size(), i, j);
}

IndexPair transposition_from_index(std::size_t p, std::size_t t) {
  std::size_t i = 0;
  std::size_t row = p - 1;
  while (t >= row) {
    t -= row;
    ++i;
    --row;
  }
  return {static_cast<int>(i), static_cast<int>(i + 1 + t)};
}

}  // namespace gips

std::size_t std::hash<gips::Permutation>::operator()(const gips::Permutation& perm) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (int v : perm.image()) {
    h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}
