#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "keylab/bigint.hpp"

namespace keylab {

// Deterministic generator: mt19937_64 plus rejection sampling, so draws are
// reproducible bit-for-bit across platforms for a given seed. Scenario code
// derives one child generator per party label from a single master seed,
// which keeps the parties' streams independent of each other.
class SeededRng {
public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  static SeededRng for_label(std::uint64_t master_seed, std::string_view label);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, bound); bound must be positive.
  BigInt uniform_below(const BigInt& bound);

  // 16 lowercase hex chars; used for scenario-generated passwords.
  std::string hex_token();

private:
  std::mt19937_64 engine_;
};

}  // namespace keylab
