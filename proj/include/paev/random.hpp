#pragma once

#include <cstdint>
#include <random>

namespace paev {

/// splitmix64 finaliser applied to seed_base + (index + 1) * golden gamma.
/// Used to derive per-replication and per-purpose seeds.
std::uint64_t mix64(std::uint64_t seed_base, std::uint64_t index) noexcept;

/// 64-bit Mersenne Twister with platform-independent conversions, so a seed
/// reproduces the same draws on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1) from the top 53 bits of one draw.
  double uniform() noexcept {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound), bound > 0; Lemire's multiply-shift with
  /// rejection, so it is exactly unbiased.
  std::uint64_t below(std::uint64_t bound) noexcept {
    std::uint64_t x = engine_();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = engine_();
        m = static_cast<__uint128_t>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  bool bernoulli(double p) noexcept { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace paev
