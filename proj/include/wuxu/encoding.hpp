#pragma once

#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wuxu/bytes.hpp"

namespace wuxu {

/// Injective realization of the || operator: each field is prefixed with
/// its 4-byte big-endian length. Distinct field lists can never collide,
/// which is what makes hash inputs like h(r||PW) unambiguous.
/// Fields must be non-empty; the list must be non-empty.
Bytes concat_fields(std::span<const BytesView> fields);
Bytes concat_fields(std::initializer_list<BytesView> fields);

/// Inverse of concat_fields. Throws std::invalid_argument on malformed input.
std::vector<Bytes> split_fields(BytesView joined);

/// Identity <-> Block. Identities are NUL-free byte strings of at most
/// kBlockWidth bytes; the encoding zero-pads on the right.
Block encode_id(std::string_view id);
/// Strips the zero padding. Returns nullopt for blocks that cannot be an
/// encoded identity (empty after stripping, or interior NUL bytes).
std::optional<std::string> decode_id(const Block& block);

/// Logical time. The whole simulation runs on ticks, never wall time.
struct Timestamp {
  std::uint64_t ticks = 0;
  friend bool operator==(const Timestamp&, const Timestamp&) = default;
  friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

/// Ticks as a big-endian integer in the last 8 bytes of the block; the
/// leading 24 bytes stay zero. A block recovered from a garbled XOR chain
/// has nonzero leading bytes with overwhelming probability, so decode
/// failure doubles as the protocol's "invalid timestamp" signal.
Block encode_timestamp(Timestamp t);
std::optional<Timestamp> decode_timestamp(const Block& block);

/// |a - b| in ticks.
std::uint64_t tick_distance(Timestamp a, Timestamp b);

}  // namespace wuxu
