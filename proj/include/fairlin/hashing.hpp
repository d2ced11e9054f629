#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace fairlin {

// FNV-1a over a canonical config string; 16 hex characters, stable across
// runs and platforms. Used to fingerprint the configuration that produced an
// output file.
inline std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string hash_hex(std::string_view text) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = fnv1a(text);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace fairlin
