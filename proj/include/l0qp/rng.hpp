#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace l0qp {

// Counter-based generator: draw number k (k = 0, 1, ...) of a stream is a pure
// function of (seed, k), so any implementation of the three steps below
// reproduces the same bits:
//
//   key   = mix(seed)
//   u64_k = mix(key + (k + 1) * 0x9E3779B97F4A7C15)        (mod 2^64)
//   mix   = SplitMix64 finalizer (xor-shift 30/27/31, multipliers below)
//
// uniform01 takes the top 53 bits: (u64 >> 11) * 2^-53, in [0, 1).
// normal() uses one Box-Muller cosine branch from two consecutive draws:
//   u1 = ((u64 >> 11) + 1) * 2^-53 in (0, 1], u2 = uniform01,
//   z  = sqrt(-2 ln u1) * cos(2 pi u2).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : key_(mix(seed)) {}

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next_u64() {
    ++counter_;
    return mix(key_ + counter_ * 0x9E3779B97F4A7C15ULL);
  }

  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Integer in [lo, hi], inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const double span = static_cast<double>(hi - lo + 1);
    auto v = lo + static_cast<std::int64_t>(std::floor(uniform01() * span));
    return v > hi ? hi : v;
  }

  double normal() {
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  std::uint64_t draws() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace l0qp
