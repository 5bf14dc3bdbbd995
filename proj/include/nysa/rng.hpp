#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "nysa/types.hpp"

namespace nysa {

// Seeded generator with bit-reproducible draws. std::mt19937_64 output is
// fixed by the standard; the derived draws below avoid the stdlib
// distributions, whose streams are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double u01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform index in {0, ..., n-1} by rejection, bias-free.
  Index index(Index n) {
    const auto bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return static_cast<Index>(r % bound);
  }

  /// Standard normal via Box-Muller.
  double normal() {
    const double u1 = 1.0 - u01();  // (0, 1], keeps log finite
    const double u2 = u01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 scramble, used to derive independent stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Deterministic sub-seed for a tagged stream of a base seed.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t tag) {
  return splitmix64(splitmix64(base) ^
                    (0x9E3779B97F4A7C15ull * (tag + 1)));
}

/// k distinct indices from {0, ..., n-1}, uniform, in selection order.
inline IndexList sample_without_replacement(Rng& rng, Index n, Index k) {
  IndexList pool(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  IndexList out;
  out.reserve(static_cast<std::size_t>(k));
  for (Index j = 0; j < k; ++j) {
    const Index pick = rng.index(n - j);
    out.push_back(pool[static_cast<std::size_t>(pick)]);
    std::swap(pool[static_cast<std::size_t>(pick)],
              pool[static_cast<std::size_t>(n - 1 - j)]);
  }
  return out;
}

}  // namespace nysa
