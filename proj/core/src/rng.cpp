#include "netdiff/rng.hpp"

#include <array>

namespace netdiff {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng make_rng(std::uint64_t seed) {
  std::array<std::uint32_t, 8> words{};
  std::uint64_t state = seed;
  for (std::size_t i = 0; i < words.size(); i += 2) {
    state = splitmix64(state);
    words[i] = static_cast<std::uint32_t>(state);
    words[i + 1] = static_cast<std::uint32_t>(state >> 32);
  }
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  // Lemire-style rejection keeps this unbiased and independent of the
  // standard library's distribution implementation.
  const std::uint64_t limit = -n % n;
  for (;;) {
    const std::uint64_t x = rng();
    __extension__ using u128 = unsigned __int128;
    const u128 m = static_cast<u128>(x) * n;
    if (static_cast<std::uint64_t>(m) >= limit) {
      return static_cast<std::uint64_t>(m >> 64);
    }
  }
}

}  // namespace netdiff
