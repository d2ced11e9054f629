#pragma once

#include <cstdint>

#include "fairlin/normal.hpp"

namespace fairlin {

// Counter-based deterministic generator, version "cbrng64-v1".
//
// Output i on stream t of seed k is
//     finalize(key(k, t) + i * GOLDEN)
// where finalize is the SplitMix64 finalizer. Draws are a pure function of
// (seed, stream, counter), so independent streams never interact and every
// consumer that documents its stream order is reproducible bit-for-bit.
// The version string is stamped into emitted files; any change to the mixing
// constants or the stream layout must bump it.
inline constexpr const char* kRngVersion = "cbrng64-v1";

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : key_(finalize(seed ^ finalize(stream + kGolden))) {}

  std::uint64_t next_u64() noexcept { return finalize(key_ + (counter_++) * kGolden); }

  // Uniform on the open interval (0, 1); 53-bit resolution, never exactly 0 or 1.
  double next_unit() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via the inverse CDF; consumes exactly one counter value.
  double next_gaussian() noexcept { return norm_ppf(next_unit()); }

  std::uint64_t counter() const noexcept { return counter_; }

  static std::uint64_t finalize(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace fairlin
