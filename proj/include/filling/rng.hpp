#pragma once

#include <cstdint>

namespace filling {

// Counter-based uniform stream: the value for (seed, trial, lane) depends on
// nothing else, so sampling loops give identical results for any thread count.
class CounterRng {
public:
  CounterRng(std::uint64_t seed, std::uint64_t trial) noexcept
      : key_(mix(seed ^ mix(trial + 0x9e3779b97f4a7c15ULL))) {}

  std::uint64_t bits(std::uint64_t lane) const noexcept {
    return mix(key_ + (lane + 1) * 0xbf58476d1ce4e5b9ULL);
  }

  // Uniform double in [0, 1).
  double uniform(std::uint64_t lane) const noexcept {
    return static_cast<double>(bits(lane) >> 11) * 0x1.0p-53;
  }

private:
  // splitmix64 finalizer
  static std::uint64_t mix(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
};

} // namespace filling
