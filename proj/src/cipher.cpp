#include "wuxu/cipher.hpp"

#include <stdexcept>

#include "wuxu/encoding.hpp"

namespace wuxu {

Ciphertext Ciphertext::from_bytes(Bytes bytes) {
  if (bytes.size() % kBlockWidth != 0) {
    throw std::invalid_argument("ciphertext length must be a multiple of the block width");
  }
  Ciphertext ct;
  ct.data_ = std::move(bytes);
  return ct;
}

Ciphertext Ciphertext::from_hex(std::string_view hex) { return from_bytes(wuxu::from_hex(hex)); }

Block Ciphertext::block(std::size_t i) const {
  if ((i + 1) * kBlockWidth > data_.size()) {
    throw std::out_of_range("ciphertext block index out of range");
  }
  return Block::from_bytes({data_.data() + i * kBlockWidth, kBlockWidth});
}

void Ciphertext::flip_bit(std::size_t bit_index) {
  if (bit_index >= data_.size() * 8) {
    throw std::invalid_argument("bit index out of range");
  }
  data_[bit_index / 8] ^= static_cast<std::uint8_t>(0x80u >> (bit_index % 8));
}

namespace {

Bytes keystream_xor(HashAlg alg, const Block& key, BytesView data) {
  Bytes out(data.begin(), data.end());
  const std::size_t blocks = data.size() / kBlockWidth;
  for (std::size_t j = 0; j < blocks; ++j) {
    const std::uint8_t counter[4] = {
        static_cast<std::uint8_t>(j >> 24),
        static_cast<std::uint8_t>(j >> 16),
        static_cast<std::uint8_t>(j >> 8),
        static_cast<std::uint8_t>(j),
    };
    Block ks = hash(alg, concat_fields({key.view(), BytesView(counter, 4)}));
    BytesView ks_view = ks.view();
    for (std::size_t i = 0; i < kBlockWidth; ++i) {
      out[j * kBlockWidth + i] ^= ks_view[i];
    }
  }
  return out;
}

}  // namespace

Ciphertext sym_encrypt(HashAlg alg, const Block& key, BytesView plaintext) {
  if (plaintext.size() % kBlockWidth != 0) {
    throw std::invalid_argument("plaintext length must be a multiple of the block width");
  }
  return Ciphertext::from_bytes(keystream_xor(alg, key, plaintext));
}

Bytes sym_decrypt(HashAlg alg, const Block& key, const Ciphertext& ct) {
  return keystream_xor(alg, key, ct.view());
}

}  // namespace wuxu
