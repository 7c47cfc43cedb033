#pragma once

#include <cstdint>

namespace descentkit {

// xorshift64* generator. Deterministic across platforms; used for randomized
// isomorphism trials and random module construction.
class Xorshift64 {
 public:
  explicit Xorshift64(std::uint64_t seed) : state_(seed ? seed : 0x9E3779B97F4A7C15ULL) {}

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  // Uniform-ish value in [0, n); bias is irrelevant here, determinism is not.
  std::uint64_t next_below(std::uint64_t n) { return n ? next() % n : 0; }

 private:
  std::uint64_t state_;
};

inline constexpr std::uint64_t kDefaultSeed = 0xD35C;

}  // namespace descentkit
