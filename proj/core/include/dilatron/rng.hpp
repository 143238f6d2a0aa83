#pragma once

#include <cstdint>

namespace dilatron {

/// splitmix64: tiny, fast, full-period 64-bit generator. Used for corpus
/// generation and replica streams; statistical quality is ample for both.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Avalanche finalizer, exposed as the stream-splitting function.
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

/// Per-replica seed: the base seed xor the replica index, passed through a
/// fixed splitting function so that streams are decorrelated regardless of
/// evaluation order.
inline std::uint64_t replica_seed(std::uint64_t seed, std::uint64_t replica) {
  return SplitMix64::mix(seed ^ replica);
}

}  // namespace dilatron
