// Deterministic cross-platform RNG (splitmix64) so runs reproduce
// byte-for-byte on any compiler and architecture.
#pragma once

#include <cstdint>

namespace vqx {

class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  uint64_t state_;
};

// Stable seed mixing for independent substreams.
inline uint64_t mix_seed(uint64_t a, uint64_t b) {
  SplitMix64 s(a ^ (0x9E3779B97F4A7C15ull + (b << 6) + (b >> 2)));
  uint64_t h = s.next();
  return h ^ b;
}

}  // namespace vqx
