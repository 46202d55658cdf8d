#pragma once

#include <cstdint>
#include <random>

namespace gsbm {

/**
 * Deterministic RNG stream derivation. Every stochastic component draws
 * from its own mt19937_64 seeded through std::seed_seq from (seed, stream
 * indices), so adding threads or reordering work never changes results.
 */
inline std::mt19937_64 make_rng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  return std::mt19937_64(seq);
}

inline std::mt19937_64 derive_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

inline std::mt19937_64 derive_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),  static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a),     static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b),     static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

/** splitmix64-style mix of (seed, a, b) into one sub-seed. */
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  auto mix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  return mix(mix(mix(seed) ^ a) ^ b);
}

}  // namespace gsbm
