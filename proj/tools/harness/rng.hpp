#pragma once

#include <cstdint>

namespace qfdense::harness {

/// Knuth's MMIX linear congruential generator:
/// state' = 6364136223846793005 * state + 1442695040888963407 (mod 2^64).
/// next_unit() returns (state' >> 11) * 2^-53, a dyadic double in [0, 1).
class MmixLcg {
 public:
  static constexpr std::uint64_t kMultiplier = 6364136223846793005ULL;
  static constexpr std::uint64_t kIncrement = 1442695040888963407ULL;

  explicit MmixLcg(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ = kMultiplier * state_ + kIncrement;
    return state_;
  }
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace qfdense::harness
