#pragma once

#include <cstdint>

namespace cyclelab {

// Reproducibility root. Every randomized routine takes one of these; batch
// drivers derive per-trial seeds as {master, trial_index}.
struct Seed {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;
};

// SplitMix64: the output sequence is a hash of an arithmetic counter, so a
// (master, stream) pair pins the whole sequence independent of call sites.
// Stream derivation is fixed: state0 = mix(master + K*(stream+1)).
class SplitMix64 {
 public:
  explicit SplitMix64(Seed s) noexcept
      : state_(mix64(s.master + 0xd1b54a32d192ed03ULL * (s.stream + 1))) {}

  static std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next_u64() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0,1), 53-bit resolution
  double next_unit() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform in [0, bound), unbiased (Lemire rejection); bound > 0
  std::uint64_t next_below(std::uint64_t bound) noexcept {
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * bound;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::uint64_t state_;
};

}  // namespace cyclelab
