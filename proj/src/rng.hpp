#pragma once

#include <cstdint>

namespace witt {

// SplitMix64. Streams are keyed by (seed, index) so a suite sharded across
// workers draws identical samples regardless of scheduling: sample i always
// uses Stream(seed, i).
struct Rng {
  uint64_t s;

  static uint64_t mix(uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  Rng(uint64_t seed, uint64_t index) : s(mix(seed) ^ mix(index * 0x9e3779b97f4a7c15ull + 1)) {}

  uint64_t u64() {
    s += 0x9e3779b97f4a7c15ull;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Unbiased bounded draw (Lemire rejection).
  uint64_t below(uint64_t n) {
    if (n == 0) return 0;
    unsigned __int128 m = static_cast<unsigned __int128>(u64()) * n;
    uint64_t lo = static_cast<uint64_t>(m);
    if (lo < n) {
      uint64_t t = (0 - n) % n;
      while (lo < t) {
        m = static_cast<unsigned __int128>(u64()) * n;
        lo = static_cast<uint64_t>(m);
      }
    }
    return static_cast<uint64_t>(m >> 64);
  }

  long int_in(long lo, long hi) { // inclusive
    return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  bool coin() { return (u64() & 1) != 0; }
};

} // namespace witt
