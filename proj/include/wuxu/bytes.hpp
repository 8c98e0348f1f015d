#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wuxu {

using Bytes = std::vector<std::uint8_t>;
using BytesView = std::span<const std::uint8_t>;

/// Width of every Block in the system: the hash output width.
inline constexpr std::size_t kBlockWidth = 32;

inline BytesView as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

std::string to_hex(BytesView data);
Bytes from_hex(std::string_view hex);  // throws std::invalid_argument on malformed input

/// Fixed-width byte string, the universal operand of the scheme's XOR
/// algebra. Hash outputs, encoded identities, encoded timestamps and the
/// B1/B2 wire values are all Blocks of kBlockWidth bytes.
class Block {
 public:
  Block() = default;  // zero block

  static Block from_bytes(BytesView bytes);    // requires exactly kBlockWidth bytes
  static Block from_hex(std::string_view hex);

  BytesView view() const { return {data_.data(), data_.size()}; }
  Bytes to_bytes() const { return Bytes(data_.begin(), data_.end()); }
  std::string to_hex() const;
  bool is_zero() const;

  std::uint8_t byte(std::size_t i) const { return data_.at(i); }
  void flip_bit(std::size_t bit_index);  // bit 0 = MSB of byte 0

  Block& operator^=(const Block& other);
  friend Block operator^(Block a, const Block& b) { return a ^= b; }

  friend bool operator==(const Block&, const Block&) = default;
  friend std::strong_ordering operator<=>(const Block&, const Block&) = default;

 private:
  std::array<std::uint8_t, kBlockWidth> data_{};
};

}  // namespace wuxu
