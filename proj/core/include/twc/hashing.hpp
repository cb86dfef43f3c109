#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace twc {

std::string sha1_hex(std::string_view data);

// splitmix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

// Seeded 64-bit hash of a byte string (FNV-1a over the bytes, then mixed).
std::uint64_t hash_bytes(std::string_view data, std::uint64_t seed = 0);

inline std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
  return mix64(h ^ (v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2)));
}

}  // namespace twc
