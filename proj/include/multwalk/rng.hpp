#pragma once

#include <cstdint>

namespace multwalk {

// 64-bit mix (the splitmix64 finalizer).  Good avalanche; used to spread
// user seeds and derive substream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct SplitMix64 {
  std::uint64_t state;

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    return mix64(state);
  }
};

// Seed for the RNG stream of trial `index` under master seed `seed`.
// Defined as mix64(seed + (index+1)*golden) so streams are decorrelated and
// the mapping is documented, stable, and platform independent.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

// xoshiro256** 1.0.  State seeded from SplitMix64 as its authors recommend.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed) {
    SplitMix64 sm{seed};
    for (auto& w : s_) w = sm.next();
  }

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

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
};

// Uniform draw from {0, 1, ..., n-1}, unbiased via rejection sampling:
// accept x >= (2^64 mod n) and reduce.  Expected <2 draws for any n.
inline std::uint64_t uniform_below(Xoshiro256& rng, std::uint64_t n) {
  const std::uint64_t threshold = (-n) % n;  // == 2^64 mod n
  for (;;) {
    const std::uint64_t x = rng.next();
    if (x >= threshold) return x % n;
  }
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Xoshiro256& rng) {
  return static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
}

}  // namespace multwalk
