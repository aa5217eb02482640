#pragma once

#include <cstdint>

namespace restore {

/// SplitMix64: the project-wide deterministic generator. Substreams are
/// derived by mixing the seed with stream keys, so draws are independent of
/// iteration order and reproducible across platforms.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Unbiased draw in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) return 0;
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }
};

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Keyed substream derivation: a pure function of (seed, keys).
inline std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                            std::uint64_t c = 0) {
  std::uint64_t h = seed;
  h = mix64(h + 0x9e3779b97f4a7c15ull + a);
  h = mix64(h + 0x9e3779b97f4a7c15ull + b);
  h = mix64(h + 0x9e3779b97f4a7c15ull + c);
  return h;
}

/// Maps 64 random bits into [-k, k].
inline std::int64_t symmetric_from_bits(std::uint64_t bits, std::int64_t k) {
  std::uint64_t span = 2 * static_cast<std::uint64_t>(k) + 1;
  return static_cast<std::int64_t>(bits % span) - k;
}

}  // namespace restore
