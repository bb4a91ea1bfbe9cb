#pragma once

#include <cstdint>

namespace fiberwalk {

// splitmix64: used both as a seed expander and as the stream-splitting
// generator. Reference output: state 0 yields 0xE220A8397B1DCDAF.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
};

// xoshiro256** seeded by expanding a 64-bit seed through splitmix64.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& w : s_) w = sm.next();
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type(0); }

  result_type operator()() { return next(); }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Unbiased draw in [0, n) by rejection on the modulus.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  // 53-bit uniform double in [0, 1).
  double uniform01() { return (next() >> 11) * 0x1.0p-53; }

  // Derives the seed for child stream `index` of a master seed: run
  // splitmix64 from the master and take output index+1. Distinct indices
  // give independent, reproducible streams.
  static std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
    SplitMix64 sm(master);
    for (std::uint64_t i = 0; i < index; ++i) sm.next();
    return sm.next();
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
};

}  // namespace fiberwalk
