#pragma once

#include <cmath>
#include <cstdint>

#include "dualmink/types.hpp"

namespace dualmink {

// Counter-based generator: every draw is a pure function of (seed, stream,
// counter), so parallel consumers and reruns produce identical streams on any
// platform.  The mixer is the SplitMix64 finalizer applied to a combined key.

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

/// Derives an independent sub-seed, e.g. one per solver start or MC worker.
inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t stream) {
  return detail::mix64(detail::mix64(seed) ^ (0x6a09e667f3bcc909ULL + stream));
}

/// Uniform draw in (0, 1), keyed by (seed, counter).
inline double uniform01(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t bits = detail::mix64(detail::mix64(seed + 0x452821e638d01377ULL) ^ counter);
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard normal via Box-Muller; draw j of sample `counter` uses a disjoint
/// counter range so vectors of normals stay reproducible under partitioning.
inline double standard_normal(std::uint64_t seed, std::uint64_t counter) {
  double u1 = uniform01(seed, 2 * counter);
  double u2 = uniform01(seed, 2 * counter + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

/// Uniform direction on S^{n-1} (normalized Gaussian vector), sample index i.
inline Vec uniform_direction(int dim, std::uint64_t seed, std::uint64_t i) {
  Vec v(dim);
  while (true) {
    for (int j = 0; j < dim; ++j) v[j] = standard_normal(seed, i * 4 + static_cast<std::uint64_t>(j));
    double norm = v.norm();
    if (norm > 1e-8) return v / norm;
    i += 0x10000000ULL;  // astronomically rare; jump to a fresh counter block
  }
}

}  // namespace dualmink
