#pragma once

#include <cstdint>

namespace seldist {

/// Counter-based 64-bit generator (splitmix64). The draw sequence is a pure
/// function of the seed and is identical across platforms and compilers,
/// which the golden tests rely on. Substreams are derived from the original
/// seed and two tags, so (seed, round, repetition) always names the same
/// stream regardless of how much of the parent stream was consumed.
class RngStream {
 public:
  RngStream() = default;
  explicit RngStream(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  /// Uniform double in [0, 1), 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double next_double(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

  RngStream substream(std::uint64_t a, std::uint64_t b = 0) const {
    std::uint64_t s = seed_;
    s = mix64(s ^ mix64(a + 0x9E3779B97F4A7C15ULL));
    s = mix64(s ^ mix64(b + 0xD1B54A32D192ED03ULL));
    return RngStream(s);
  }

  static std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t state_ = 0;
};

}  // namespace seldist
