#pragma once

// Test-only reference implementations. Each one is written against the
// protocol definition directly and stays independent of the library code it
// cross-checks: different data representations, no shared helpers.

#include <cstdint>
#include <string>
#include <vector>

namespace oracle {

// Reference 17-bit Fibonacci LFSR, taps at bit positions 17 and 14
// (1-indexed from the low end, bit i carries weight 2^(i-1)). One step
// shifts the register up by one and feeds bit17 XOR bit14 into the low end.
// Implemented over an explicit bit array.
inline std::uint32_t lfsr_step(std::uint32_t reg) {
  bool bit[17];
  for (int i = 0; i < 17; ++i) {
    bit[i] = ((reg >> i) & 1u) != 0;
  }
  const bool feedback = bit[16] != bit[13];
  for (int i = 16; i >= 1; --i) {
    bit[i] = bit[i - 1];
  }
  bit[0] = feedback;
  std::uint32_t out = 0;
  for (int i = 0; i < 17; ++i) {
    if (bit[i]) {
      out |= (1u << i);
    }
  }
  return out;
}

inline std::vector<std::uint32_t> lfsr_sequence(std::uint32_t seed, std::size_t count) {
  std::vector<std::uint32_t> seq;
  seq.reserve(count);
  std::uint32_t reg = seed;
  for (std::size_t i = 0; i < count; ++i) {
    reg = lfsr_step(reg);
    seq.push_back(reg);
  }
  return seq;
}

// Naive polynomial evaluation mod p: f(x) = secret + c1*x + c2*x^2 + ...
inline unsigned poly_eval_mod(unsigned secret, const std::vector<unsigned>& coeffs, unsigned x,
                              unsigned p) {
  unsigned long long acc = secret % p;
  unsigned long long xpow = 1;
  for (unsigned c : coeffs) {
    xpow = xpow * x % p;
    acc = (acc + static_cast<unsigned long long>(c % p) * xpow) % p;
  }
  return static_cast<unsigned>(acc);
}

// Brute-force multiplicative inverse: scan [1, p) for a*b = 1 (mod p).
inline unsigned inverse_scan(unsigned a, unsigned p) {
  for (unsigned b = 1; b < p; ++b) {
    if (static_cast<unsigned long long>(a % p) * b % p == 1) {
      return b;
    }
  }
  return 0;  // no inverse (a = 0 mod p)
}

// Bit-string packet builder: fields are appended as literal '0'/'1'
// characters, most significant bit first, then the string is padded with
// '0' to a byte boundary and packed.
class BitStringBuilder {
 public:
  void append(std::uint64_t value, int width) {
    for (int i = width - 1; i >= 0; --i) {
      bits_ += ((value >> i) & 1u) ? '1' : '0';
    }
  }

  std::size_t bit_count() const { return bits_.size(); }

  std::vector<std::uint8_t> bytes() const {
    std::string padded = bits_;
    while (padded.size() % 8 != 0) {
      padded += '0';
    }
    std::vector<std::uint8_t> out(padded.size() / 8, 0);
    for (std::size_t i = 0; i < padded.size(); ++i) {
      if (padded[i] == '1') {
        out[i / 8] |= static_cast<std::uint8_t>(1u << (7 - i % 8));
      }
    }
    return out;
  }

 private:
  std::string bits_;
};

// Subset enumeration over {1..n}, n <= 20: counts subsets of exactly /
// at most k elements by walking every bitmask.
inline std::uint64_t count_subsets_exact(unsigned n, unsigned k) {
  std::uint64_t count = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<unsigned>(__builtin_popcount(mask)) == k) {
      ++count;
    }
  }
  return count;
}

inline std::uint64_t count_subsets_up_to(unsigned n, unsigned k) {
  std::uint64_t count = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const unsigned size = static_cast<unsigned>(__builtin_popcount(mask));
    if (size >= 1 && size <= k) {
      ++count;
    }
  }
  return count;
}

}  // namespace oracle
