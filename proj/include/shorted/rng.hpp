#pragma once

#include <cstdint>

namespace shorted {

/// xorshift64* stream, seeded through one splitmix64 step so that seed 0 is
/// usable. Every draw is derived from `next()` by the fixed rules below, so
/// equal seeds give identical streams on every platform:
///
///   state ^= state >> 12; state ^= state << 25; state ^= state >> 27;
///   return state * 0x2545F4914F6CDD1D;
///
///   uniform_int(lo, hi) = lo + next() % (hi - lo + 1)
///   uniform01()         = (next() >> 11) * 2^-53
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(splitmix(seed)) {
    if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
  }

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [-1, 1).
  double symmetric() { return 2.0 * uniform01() - 1.0; }

  /// Independent child stream; consumes one draw from this stream.
  Rng fork() { return Rng(next()); }

 private:
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  std::uint64_t state_;
};

}  // namespace shorted
