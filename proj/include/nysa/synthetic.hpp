#pragma once

#include "nysa/rng.hpp"

namespace nysa {

/// Gaussian blobs of unequal density: blob b receives a share of points
/// proportional to 2^{-b}, so early blobs are dense and late ones sparse.
/// Centers are drawn once from a scaled normal so blobs are well
/// separated relative to `spread`.
inline Matrix synth_blobs(Index n, Index d, int blobs, double spread,
                          std::uint64_t rng_seed) {
  if (n < 1 || d < 1 || blobs < 1)
    throw config_error("synth_blobs: need n, d, blobs >= 1");
  if (!(spread > 0.0)) throw config_error("synth_blobs: spread must be > 0");
  Rng rng(rng_seed);
  Matrix centers(blobs, d);
  for (Index b = 0; b < blobs; ++b)
    for (Index j = 0; j < d; ++j) centers(b, j) = 4.0 * rng.normal();

  // Geometric shares, largest first; remainders go to the densest blob.
  std::vector<Index> counts(static_cast<std::size_t>(blobs), 0);
  double total = 0.0;
  for (int b = 0; b < blobs; ++b) total += std::pow(2.0, -b);
  Index assigned = 0;
  for (int b = 0; b < blobs; ++b) {
    counts[static_cast<std::size_t>(b)] = static_cast<Index>(
        std::floor(static_cast<double>(n) * std::pow(2.0, -b) / total));
    assigned += counts[static_cast<std::size_t>(b)];
  }
  counts[0] += n - assigned;

  Matrix points(n, d);
  Index row = 0;
  for (int b = 0; b < blobs; ++b)
    for (Index i = 0; i < counts[static_cast<std::size_t>(b)]; ++i, ++row)
      for (Index j = 0; j < d; ++j)
        points(row, j) = centers(b, j) + spread * rng.normal();
  return points;
}

/// Ring of radius 2 plus a dense gaussian cluster at the origin (2-D).
/// 60% of the points sit on the (noisy) ring, 40% in the cluster.
inline Matrix synth_ring_cluster(Index n, std::uint64_t rng_seed) {
  if (n < 2) throw config_error("synth_ring_cluster: need n >= 2");
  Rng rng(rng_seed);
  const Index n_ring = (3 * n) / 5;
  Matrix points(n, 2);
  for (Index i = 0; i < n_ring; ++i) {
    const double angle = rng.u01() * 6.283185307179586477;
    const double radius = 2.0 + 0.08 * rng.normal();
    points(i, 0) = radius * std::cos(angle);
    points(i, 1) = radius * std::sin(angle);
  }
  for (Index i = n_ring; i < n; ++i) {
    points(i, 0) = 0.15 * rng.normal();
    points(i, 1) = 0.15 * rng.normal();
  }
  return points;
}

/// Two interleaved half-circles with unequal sizes (the first moon holds
/// 75% of the points, so its region is markedly denser), plus noise.
inline Matrix synth_two_moons(Index n, std::uint64_t rng_seed) {
  if (n < 2) throw config_error("synth_two_moons: need n >= 2");
  Rng rng(rng_seed);
  const Index n_dense = (3 * n) / 4;
  Matrix points(n, 2);
  for (Index i = 0; i < n; ++i) {
    const bool dense = i < n_dense;
    const double angle = rng.u01() * 3.141592653589793238;
    const double noise_x = 0.08 * rng.normal();
    const double noise_y = 0.08 * rng.normal();
    if (dense) {
      points(i, 0) = std::cos(angle) + noise_x;
      points(i, 1) = std::sin(angle) + noise_y;
    } else {
      points(i, 0) = 1.0 - std::cos(angle) + noise_x;
      points(i, 1) = 0.5 - std::sin(angle) + noise_y;
    }
  }
  return points;
}

}  // namespace nysa
