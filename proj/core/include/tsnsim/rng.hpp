#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace tsnsim {

/// Deterministic RNG. Distribution sampling is hand-rolled on top of the raw
/// mt19937_64 stream so that identical seeds give identical draw sequences on
/// every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform integer in [lo, hi], both inclusive.
  std::uint64_t uniform_u64(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo;  // hi >= lo expected
    if (span == UINT64_MAX) return next_u64();
    const unsigned __int128 wide = static_cast<unsigned __int128>(next_u64()) * (span + 1);
    return lo + static_cast<std::uint64_t>(wide >> 64);
  }

  /// Uniform double in (0, 1].
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
  }

  /// Standard normal via Box-Muller, uncached.
  double normal() {
    const double u1 = uniform01();
    const double u2 = static_cast<double>(next_u64() >> 11) * 0x1p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace tsnsim
