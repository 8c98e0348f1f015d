#include "wuxu/hash.hpp"

#include <stdexcept>
#include <string>

#include <openssl/evp.h>

namespace wuxu {

HashAlg hash_alg_from_name(std::string_view name) {
  if (name == "sha256") return HashAlg::kSha256;
  if (name == "sha3-256") return HashAlg::kSha3_256;
  if (name == "blake2s256") return HashAlg::kBlake2s256;
  throw std::invalid_argument("unknown hash algorithm: " + std::string(name));
}

std::string_view hash_alg_name(HashAlg alg) {
  switch (alg) {
    case HashAlg::kSha256:
      return "sha256";
    case HashAlg::kSha3_256:
      return "sha3-256";
    case HashAlg::kBlake2s256:
      return "blake2s256";
  }
  throw std::invalid_argument("unknown hash algorithm enum value");
}

namespace {

const EVP_MD* evp_md(HashAlg alg) {
  switch (alg) {
    case HashAlg::kSha256:
      return EVP_sha256();
    case HashAlg::kSha3_256:
      return EVP_sha3_256();
    case HashAlg::kBlake2s256:
      return EVP_blake2s256();
  }
  return nullptr;
}

}  // namespace

Block hash(HashAlg alg, BytesView data) {
  const EVP_MD* md = evp_md(alg);
  if (md == nullptr) {
    throw std::runtime_error("hash algorithm unavailable in this OpenSSL build");
  }
  std::array<std::uint8_t, EVP_MAX_MD_SIZE> digest;
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, md, nullptr) != 1) {
    throw std::runtime_error("EVP_Digest failed");
  }
  if (len != kBlockWidth) {
    throw std::runtime_error("hash produced unexpected digest width");
  }
  return Block::from_bytes({digest.data(), len});
}

}  // namespace wuxu
