#pragma once

#include <cstdint>

namespace skillgraph::rng {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Counter-based draw: a pure function of (seed, stream, counter), so the
/// value for a given node never depends on evaluation order or threading.
constexpr std::uint64_t draw(std::uint64_t seed, std::uint64_t stream,
                             std::uint64_t counter) noexcept {
  return mix(mix(mix(seed) ^ stream) ^ counter);
}

/// Uniform in [0, 1) with 53 random bits.
constexpr double uniform01(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace skillgraph::rng
