#pragma once

#include <string_view>

#include "wuxu/bytes.hpp"

namespace wuxu {

/// Supported one-way hash functions. All produce kBlockWidth-byte digests,
/// so the XOR algebra is width-compatible regardless of the choice.
enum class HashAlg {
  kSha256,
  kSha3_256,
  kBlake2s256,
};

HashAlg hash_alg_from_name(std::string_view name);  // "sha256" | "sha3-256" | "blake2s256"
std::string_view hash_alg_name(HashAlg alg);

/// One-shot digest. Deterministic and byte-stable across platforms.
Block hash(HashAlg alg, BytesView data);

}  // namespace wuxu
