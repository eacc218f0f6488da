#pragma once

#include <cstdint>
#include <random>

namespace spatialgraph {

using Rng = std::mt19937_64;

// Uniform draw on [0,1) from the top 53 bits. Used instead of
// std::uniform_real_distribution, whose output is implementation-defined.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, bound) by rejection; bound > 0.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

// Stream indices under one seed: point generation and the sampler draw from
// different streams so a shared --seed does not correlate them.
inline constexpr std::uint64_t kPointsStream = 0;
inline constexpr std::uint64_t kSamplerStream = 1;

// Independent stream for run `index` of a study seeded with `master`.
inline Rng make_stream(std::uint64_t master, std::uint64_t index = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(master),
                    static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

// Seed of run `index` within a study.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  Rng rng = make_stream(master, index);
  return rng();
}

}  // namespace spatialgraph
