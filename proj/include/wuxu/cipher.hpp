#pragma once

#include <string_view>

#include "wuxu/bytes.hpp"
#include "wuxu/hash.hpp"

namespace wuxu {

/// Output of the symmetric cipher. Length is always a multiple of
/// kBlockWidth (protocol plaintexts are exactly 3 blocks for C1 and
/// 2 blocks for C2).
class Ciphertext {
 public:
  Ciphertext() = default;

  static Ciphertext from_bytes(Bytes bytes);  // length must be a multiple of kBlockWidth
  static Ciphertext from_hex(std::string_view hex);

  BytesView view() const { return {data_.data(), data_.size()}; }
  std::string to_hex() const { return wuxu::to_hex(view()); }
  std::size_t size() const { return data_.size(); }
  std::size_t block_count() const { return data_.size() / kBlockWidth; }

  /// Extracts block i of the ciphertext bytes.
  Block block(std::size_t i) const;
  void flip_bit(std::size_t bit_index);

  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;

 private:
  Bytes data_;
};

/// Deterministic keystream cipher in counter mode over the hash:
/// keystream block j = hash(concat_fields([key, j as 4-byte big-endian])),
/// ciphertext = plaintext XOR keystream. Unauthenticated on purpose:
/// decrypting with a wrong key yields garbage rather than an error, and
/// garbage is only detected by the protocol's semantic checks.
Ciphertext sym_encrypt(HashAlg alg, const Block& key, BytesView plaintext);
Bytes sym_decrypt(HashAlg alg, const Block& key, const Ciphertext& ct);

}  // namespace wuxu
