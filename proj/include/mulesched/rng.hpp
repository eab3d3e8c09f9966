#pragma once

#include <cstdint>

namespace mulesched {

/// SplitMix64. Every randomized component (deployment sampling, penetration
/// draws, synthetic trajectories) consumes this generator so runs are
/// reproducible bit-for-bit across platforms. The draw order for each use is
/// documented at the call site and is part of the output contract.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [lo, hi] inclusive.
  long long next_int(long long lo, long long hi) {
    uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<long long>(next_u64() % span);
  }

 private:
  uint64_t state_;
};

}  // namespace mulesched
