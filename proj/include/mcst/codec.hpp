#pragma once

// Plain text <-> hex digest conversion and the ROT13 scramble applied to the
// digest. Lowercase hex keeps ROT13 inside one case: a-f map to n-s.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcst/errors.hpp"

namespace mcst {

inline std::string to_hex_digest(std::span<const std::uint8_t> plain) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string digest;
  digest.reserve(plain.size() * 2);
  for (const std::uint8_t byte : plain) {
    digest += kDigits[byte >> 4];
    digest += kDigits[byte & 0x0F];
  }
  return digest;
}

inline std::vector<std::uint8_t> from_hex_digest(std::string_view digest) {
  if (digest.size() % 2 != 0) {
    throw OddLength("hex digest must have even length");
  }
  auto nibble = [](char c) -> std::uint8_t {
    if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<std::uint8_t>(c - 'a' + 10);
    throw NonHexChar(std::string("invalid hex character '") + c + "'");
  };
  std::vector<std::uint8_t> out;
  out.reserve(digest.size() / 2);
  for (std::size_t i = 0; i < digest.size(); i += 2) {
    out.push_back(static_cast<std::uint8_t>(nibble(digest[i]) << 4 | nibble(digest[i + 1])));
  }
  return out;
}

// Shifts alphabetic ASCII 13 places with wraparound, preserving case;
// digits, symbols, whitespace and everything else pass through unchanged.
// Applying it twice gives back the input.
inline std::string rot13(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'a' && c <= 'z') {
      c = static_cast<char>((c - 'a' + 13) % 26 + 'a');
    } else if (c >= 'A' && c <= 'Z') {
      c = static_cast<char>((c - 'A' + 13) % 26 + 'A');
    }
  }
  return out;
}

}  // namespace mcst
