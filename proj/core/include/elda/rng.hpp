#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace elda {

// Hand-rolled draws instead of std::*_distribution so that seeded streams
// are identical across standard-library implementations.

using Rng = std::mt19937_64;

/// Uniform double in [0, 1), 53 random bits.
inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform_unit(rng);
}

/// Uniform index in [0, n), n >= 1. Multiply-shift; bias is O(n / 2^64).
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(rng()) * n) >> 64);
}

/// Standard normal via Box-Muller. Draws two uniforms per call so the
/// stream position does not depend on call parity.
inline double gaussian(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform_unit(rng); // (0, 1], keeps log finite
  const double u2 = uniform_unit(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace elda
