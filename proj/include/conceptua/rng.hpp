#pragma once

#include <cmath>
#include <cstdint>

namespace conceptua {

/// splitmix64 generator. The update rule is a fixed published constant-mix
/// sequence, so a given seed yields the same stream on every platform and
/// standard library; all Monte Carlo in this project goes through it to keep
/// seeded runs byte-reproducible.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53 mantissa bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Unit-rate exponential draw; always finite and >= 0.
  double exponential() { return -std::log1p(-uniform01()); }

  /// Standard normal via Box-Muller.
  double normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    const double u1 = 1.0 - uniform01(); // (0, 1], keeps log finite
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.28318530717958647692 * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
  }

private:
  std::uint64_t state_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

/// Decorrelated seed for substream `index` of a run seeded with `seed`.
/// Giving every Monte Carlo sample its own substream makes a sharded run
/// bit-identical to the sequential one, whatever the shard layout.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mixer(seed ^ (0xD1B54A32D192ED03ull * (index + 1)));
  return mixer.next();
}

} // namespace conceptua
