#pragma once

#include <cmath>
#include <cstdint>

namespace srt {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Counter-based random stream: the state of trial `t` under master seed `s`
// is a fixed mixing of (s, t), so any partitioning of trials across workers
// yields the same per-trial draws.
class TrialRng {
 public:
  using result_type = std::uint64_t;

  TrialRng(std::uint64_t seed, std::uint64_t trial) noexcept
      : state_(splitmix64(splitmix64(seed) ^ (trial * 0xD1B54A32D192ED03ULL))) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  result_type operator()() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform on (0, 1], 53-bit resolution.
  double uniform() noexcept {
    return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform on [lo, hi); exactly `lo` when the range is degenerate.
  double uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * (1.0 - uniform());
  }

  // Unit-mean exponential by inversion.
  double unit_exponential() noexcept { return -std::log(uniform()); }

 private:
  std::uint64_t state_;
};

}  // namespace srt
