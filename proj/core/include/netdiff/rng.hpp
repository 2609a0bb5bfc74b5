#pragma once

#include <cstdint>
#include <random>

namespace netdiff {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Stream i of an ensemble seeded with `seed` uses derive_seed(seed, i).
constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                    std::uint64_t stream) noexcept {
  return seed ^ stream;
}

// Engines for neighbouring seeds are decorrelated by running the seed
// through splitmix64 before filling the Mersenne state.
Rng make_rng(std::uint64_t seed);

// Uniform double on [0, 1) from the top 53 bits of one draw.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer on [0, n).
std::uint64_t uniform_index(Rng& rng, std::uint64_t n);

}  // namespace netdiff
