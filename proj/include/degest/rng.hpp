#pragma once

#include <cstdint>

namespace degest {

// Counter-based RNG built on the splitmix64 avalanche. Every random decision
// is a pure function of (seed, stream, counter), so per-node and per-replicate
// draws are order-independent and reproducible across thread counts.

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t hash_key(std::uint64_t seed, std::uint64_t stream,
                                 std::uint64_t counter = 0) noexcept {
  std::uint64_t h = mix64(seed + kGoldenGamma);
  h = mix64(h ^ (stream + kGoldenGamma));
  return mix64(h ^ (counter + kGoldenGamma));
}

/// Uniform double in [0, 1) from the top 53 bits.
constexpr double unit_double(std::uint64_t u) noexcept {
  return static_cast<double>(u >> 11) * 0x1.0p-53;
}

// Disjoint decision streams.
namespace rng_stream {
inline constexpr std::uint64_t node_inclusion = 1;
inline constexpr std::uint64_t er_edge = 2;
inline constexpr std::uint64_t replicate = 3;
inline constexpr std::uint64_t degree_draw = 4;
inline constexpr std::uint64_t stub_shuffle = 5;
inline constexpr std::uint64_t cell = 6;
}  // namespace rng_stream

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return hash_key(seed, rng_stream::replicate, index);
}

/// Sequential generator for shuffles; state advances by the golden gamma.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  /// Unbiased-enough draw in [0, bound) via 128-bit multiply.
  std::uint64_t bounded(std::uint64_t bound) noexcept {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  double unit() noexcept { return unit_double(next()); }

 private:
  std::uint64_t state_;
};

}  // namespace degest
