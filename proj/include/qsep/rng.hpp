#pragma once

#include <cmath>
#include <cstdint>

namespace qsep {

// SplitMix64: 64-bit counter generator with a finalizing mixer. Chosen for
// bit-reproducible streams across platforms; splitting derives independent
// streams per call site so adding a consumer never shifts another's draws.
struct Rng {
  std::uint64_t state;
  bool has_cached = false;
  double cached = 0.0;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  static Rng split(std::uint64_t seed, std::uint64_t stream) {
    return Rng(mix(seed + 0x9E3779B97F4A7C15ULL * (stream + 1)));
  }

  std::uint64_t next_u64() {
    state += 0x9E3779B97F4A7C15ULL;
    return mix(state);
  }

  // Uniform on (0, 1] with 53-bit resolution (never 0, so log is safe).
  double next_unit() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; the pair's second value is cached.
  double next_gaussian() {
    if (has_cached) {
      has_cached = false;
      return cached;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
    cached = r * std::sin(theta);
    has_cached = true;
    return r * std::cos(theta);
  }
};

// Stream tags, one per randomness consumer.
inline constexpr std::uint64_t kStreamPure = 1;
inline constexpr std::uint64_t kStreamDensity = 2;
inline constexpr std::uint64_t kStreamSeparable = 3;
inline constexpr std::uint64_t kStreamOptimizer = 4;
inline constexpr std::uint64_t kStreamUnitary = 5;

}  // namespace qsep
