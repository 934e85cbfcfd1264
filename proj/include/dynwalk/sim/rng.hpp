#pragma once

#include <cstdint>
#include <random>

namespace dynwalk {

inline constexpr std::uint64_t kDefaultSeed = 20240607;

/// Independent random stream identified by (master seed, trial, walker, tag).
/// The identifiers are hashed through std::seed_seq into a fresh mt19937_64, so a
/// stream's draws depend only on its identifiers, never on scheduling order.
class RngStream {
 public:
  RngStream(std::uint64_t master, std::uint64_t trial, std::uint64_t walker = 0, std::uint64_t tag = 0) {
    std::seed_seq seq{lo(master), hi(master), lo(trial), hi(trial), lo(walker), hi(walker), lo(tag), hi(tag)};
    engine_.seed(seq);
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_open() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Lemire-style rejection keeps the draw exactly uniform.
    const std::uint64_t limit = (~std::uint64_t{0}) - (~std::uint64_t{0}) % n;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % n;
  }

  bool bernoulli(double p) { return uniform() < p; }

  std::mt19937_64& engine() { return engine_; }

 private:
  static std::uint32_t lo(std::uint64_t x) { return static_cast<std::uint32_t>(x & 0xffffffffu); }
  static std::uint32_t hi(std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); }

  std::mt19937_64 engine_;
};

}  // namespace dynwalk
