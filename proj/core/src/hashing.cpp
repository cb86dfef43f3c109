#include "twc/hashing.hpp"

#include <openssl/evp.h>

#include <array>
#include <memory>

#include "twc/error.hpp"

namespace twc {

std::string sha1_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha1(), nullptr) != 1) {
    throw Error("SHA-1 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::uint64_t hash_bytes(std::string_view data, std::uint64_t seed) {
  std::uint64_t h = 0xCBF29CE484222325ULL ^ mix64(seed);
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return mix64(h ^ data.size());
}

}  // namespace twc
