#include "wuxu/bytes.hpp"

#include <algorithm>
#include <stdexcept>

namespace wuxu {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string to_hex(BytesView data) {
  std::string out;
  out.reserve(data.size() * 2);
  for (std::uint8_t b : data) {
    out.push_back(kHexDigits[b >> 4]);
    out.push_back(kHexDigits[b & 0x0f]);
  }
  return out;
}

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) {
    throw std::invalid_argument("hex string has odd length");
  }
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = hex_value(hex[i]);
    int lo = hex_value(hex[i + 1]);
    if (hi < 0 || lo < 0) {
      throw std::invalid_argument("hex string has non-hex character");
    }
    out.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
  }
  return out;
}

Block Block::from_bytes(BytesView bytes) {
  if (bytes.size() != kBlockWidth) {
    throw std::invalid_argument("block must be exactly " + std::to_string(kBlockWidth) +
                                " bytes, got " + std::to_string(bytes.size()));
  }
  Block b;
  std::copy(bytes.begin(), bytes.end(), b.data_.begin());
  return b;
}

Block Block::from_hex(std::string_view hex) { return from_bytes(wuxu::from_hex(hex)); }

std::string Block::to_hex() const { return wuxu::to_hex(view()); }

bool Block::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](std::uint8_t b) { return b == 0; });
}

void Block::flip_bit(std::size_t bit_index) {
  if (bit_index >= kBlockWidth * 8) {
    throw std::invalid_argument("bit index out of range");
  }
  data_[bit_index / 8] ^= static_cast<std::uint8_t>(0x80u >> (bit_index % 8));
}

Block& Block::operator^=(const Block& other) {
  for (std::size_t i = 0; i < kBlockWidth; ++i) {
    data_[i] ^= other.data_[i];
  }
  return *this;
}

}  // namespace wuxu
