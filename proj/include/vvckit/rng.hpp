#pragma once

#include <cstdint>

namespace vvckit {

// splitmix64; fixed so workloads and regression hashes match across platforms.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(uint64_t seed) : state_(seed) {}

  constexpr uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [lo, hi]. Modulo bias is irrelevant for workload generation.
  constexpr int uniform(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1));
  }

  constexpr bool chance(int percent) { return uniform(0, 99) < percent; }

 private:
  uint64_t state_;
};

// Derive an independent stream seed from a base seed and an index.
constexpr uint64_t mix_seed(uint64_t seed, uint64_t index) {
  SplitMix64 g(seed ^ (index * 0xD1B54A32D192ED03ull));
  return g.next();
}

class Fnv1a64 {
 public:
  static constexpr uint64_t kOffsetBasis = 0xCBF29CE484222325ull;
  static constexpr uint64_t kPrime = 0x100000001B3ull;

  constexpr void update_byte(uint8_t b) {
    hash_ ^= b;
    hash_ *= kPrime;
  }

  // Samples are hashed as two little-endian bytes.
  constexpr void update_sample(uint16_t s) {
    update_byte(static_cast<uint8_t>(s & 0xFF));
    update_byte(static_cast<uint8_t>(s >> 8));
  }

  constexpr uint64_t value() const { return hash_; }

 private:
  uint64_t hash_ = kOffsetBasis;
};

}  // namespace vvckit
