#pragma once

#include <cstdint>
#include <random>

#include "wuxu/bytes.hpp"

namespace wuxu {

/// Single source of randomness for a scenario. mt19937_64 has a
/// standard-specified output sequence, and the derived draws below avoid
/// implementation-defined std distributions, so a seed pins every byte
/// of a run on every platform.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform-ish draw in [0, bound). Plain modulo: the bias is irrelevant
  /// here and the result is reproducible everywhere.
  std::uint64_t below(std::uint64_t bound);

  Bytes bytes(std::size_t n);
  Block block();

 private:
  std::mt19937_64 engine_;
};

}  // namespace wuxu
