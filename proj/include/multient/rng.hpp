#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace multient {

// splitmix64 finalizer; used to derive independent per-item seeds from
// (run seed, item index) so results never depend on scheduling.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Portable uniform double in [0, 1); std::uniform_real_distribution is
// implementation-defined, this is not.
inline double uniform01(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

// Box-Muller, portable for the same reason.
inline double standard_normal(std::mt19937_64& engine) {
  double u1 = uniform01(engine);
  while (u1 <= 0.0) u1 = uniform01(engine);
  const double u2 = uniform01(engine);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace multient
