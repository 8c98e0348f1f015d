#include "wuxu/encoding.hpp"

#include <algorithm>
#include <stdexcept>

namespace wuxu {

namespace {

void put_u32_be(Bytes& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

constexpr std::size_t kTimestampBytes = 8;
constexpr std::size_t kTimestampOffset = kBlockWidth - kTimestampBytes;

}  // namespace

Bytes concat_fields(std::span<const BytesView> fields) {
  if (fields.empty()) {
    throw std::invalid_argument("concat_fields: empty field list");
  }
  Bytes out;
  for (const BytesView& field : fields) {
    if (field.empty()) {
      throw std::invalid_argument("concat_fields: empty field");
    }
    if (field.size() > 0xffffffffu) {
      throw std::invalid_argument("concat_fields: field too long");
    }
    put_u32_be(out, static_cast<std::uint32_t>(field.size()));
    out.insert(out.end(), field.begin(), field.end());
  }
  return out;
}

Bytes concat_fields(std::initializer_list<BytesView> fields) {
  return concat_fields(std::span<const BytesView>(fields.begin(), fields.size()));
}

std::vector<Bytes> split_fields(BytesView joined) {
  std::vector<Bytes> fields;
  std::size_t pos = 0;
  while (pos < joined.size()) {
    if (joined.size() - pos < 4) {
      throw std::invalid_argument("split_fields: truncated length prefix");
    }
    std::uint32_t len = static_cast<std::uint32_t>(joined[pos]) << 24 |
                        static_cast<std::uint32_t>(joined[pos + 1]) << 16 |
                        static_cast<std::uint32_t>(joined[pos + 2]) << 8 |
                        static_cast<std::uint32_t>(joined[pos + 3]);
    pos += 4;
    if (len == 0 || joined.size() - pos < len) {
      throw std::invalid_argument("split_fields: bad field length");
    }
    fields.emplace_back(joined.begin() + static_cast<std::ptrdiff_t>(pos),
                        joined.begin() + static_cast<std::ptrdiff_t>(pos + len));
    pos += len;
  }
  if (fields.empty()) {
    throw std::invalid_argument("split_fields: no fields");
  }
  return fields;
}

Block encode_id(std::string_view id) {
  if (id.empty()) {
    throw std::invalid_argument("identity must be non-empty");
  }
  if (id.size() > kBlockWidth) {
    throw std::invalid_argument("identity longer than " + std::to_string(kBlockWidth) + " bytes");
  }
  if (id.find('\0') != std::string_view::npos) {
    throw std::invalid_argument("identity must not contain NUL bytes");
  }
  Bytes padded(kBlockWidth, 0);
  std::copy(id.begin(), id.end(), padded.begin());
  return Block::from_bytes(padded);
}

std::optional<std::string> decode_id(const Block& block) {
  BytesView v = block.view();
  std::size_t end = kBlockWidth;
  while (end > 0 && v[end - 1] == 0) {
    --end;
  }
  if (end == 0) {
    return std::nullopt;  // zero block is not an identity
  }
  for (std::size_t i = 0; i < end; ++i) {
    if (v[i] == 0) {
      return std::nullopt;  // interior NUL: not a zero-padded identity
    }
  }
  return std::string(reinterpret_cast<const char*>(v.data()), end);
}

Block encode_timestamp(Timestamp t) {
  Bytes out(kBlockWidth, 0);
  std::uint64_t v = t.ticks;
  for (std::size_t i = 0; i < kTimestampBytes; ++i) {
    out[kBlockWidth - 1 - i] = static_cast<std::uint8_t>(v & 0xff);
    v >>= 8;
  }
  return Block::from_bytes(out);
}

std::optional<Timestamp> decode_timestamp(const Block& block) {
  BytesView v = block.view();
  for (std::size_t i = 0; i < kTimestampOffset; ++i) {
    if (v[i] != 0) {
      return std::nullopt;  // garbled recovery: noise outside the tick field
    }
  }
  std::uint64_t ticks = 0;
  for (std::size_t i = kTimestampOffset; i < kBlockWidth; ++i) {
    ticks = ticks << 8 | v[i];
  }
  return Timestamp{ticks};
}

std::uint64_t tick_distance(Timestamp a, Timestamp b) {
  return a.ticks >= b.ticks ? a.ticks - b.ticks : b.ticks - a.ticks;
}

}  // namespace wuxu
