#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace underlay {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// Stateless: the output is a pure function of (counter, key), so any trial
/// can be regenerated in any order on any thread.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static constexpr Counter generate(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    return ctr;
  }
};

/// Uniform and exponential variates addressed by (seed, trial, channel).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  /// Uniform on the open interval (0,1) with 53 random bits.
  double uniform(std::uint64_t trial, std::uint32_t channel) const {
    const auto out = Philox4x32::generate(
        {static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32), channel, 0u}, key_);
    const std::uint64_t bits = ((std::uint64_t{out[0]} << 32) | out[1]) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  double exponential(std::uint64_t trial, std::uint32_t channel, double rate) const {
    return exponential_from_uniform(uniform(trial, channel), rate);
  }

  /// Inverse CDF of Exp(rate).
  static double exponential_from_uniform(double u, double rate) { return -std::log(u) / rate; }

 private:
  Philox4x32::Key key_;
};

}  // namespace underlay
