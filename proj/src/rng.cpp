#include "wuxu/rng.hpp"

#include <stdexcept>

namespace wuxu {

std::uint64_t RandomSource::below(std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("below: bound must be positive");
  }
  return next_u64() % bound;
}

Bytes RandomSource::bytes(std::size_t n) {
  Bytes out;
  out.reserve(n);
  while (out.size() < n) {
    std::uint64_t word = next_u64();
    for (int shift = 56; shift >= 0 && out.size() < n; shift -= 8) {
      out.push_back(static_cast<std::uint8_t>(word >> shift));
    }
  }
  return out;
}

Block RandomSource::block() { return Block::from_bytes(bytes(kBlockWidth)); }

}  // namespace wuxu
