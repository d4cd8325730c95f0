#pragma once

#include <cstdint>

namespace halfline {
namespace rng {

// 64-bit finalizer with full avalanche (splitmix-style).
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Counter-based generator: the n-th draw of stream (seed, stream) is a pure
// function of (seed, stream, n), so independent replicas and reruns are
// bitwise reproducible regardless of threading or call interleavings.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix64(seed) ^ mix64(~stream)), counter_(0) {}

  std::uint64_t next_u64() { return mix64(key_ + 0xA0761D6478BD642Full * ++counter_); }

  // uniform double in [0, 1)
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform integer in [0, n)
  std::uint64_t next_below(std::uint64_t n) {
    // rejection-free multiply-shift; bias < 2^-64 is irrelevant here
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace rng
}  // namespace halfline
