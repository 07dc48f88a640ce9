#pragma once

// k-of-n secret sharing over GF(257): a fresh random polynomial of degree
// k-1 per message byte, shares are evaluations at x = 1..n, the secret sits
// at f(0). 257 is the smallest prime covering all byte values; a share can
// take the value 256, so serialized elements are 16 bits wide.

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "mcst/errors.hpp"

namespace mcst {

inline constexpr std::uint32_t kFieldPrime = 257;

class FieldElement {
 public:
  constexpr FieldElement() = default;
  constexpr explicit FieldElement(std::uint32_t v)
      : value_(static_cast<std::uint16_t>(v % kFieldPrime)) {}

  constexpr std::uint16_t value() const { return value_; }

  friend constexpr FieldElement operator+(FieldElement a, FieldElement b) {
    return FieldElement(static_cast<std::uint32_t>(a.value_) + b.value_);
  }
  friend constexpr FieldElement operator-(FieldElement a, FieldElement b) {
    return FieldElement(static_cast<std::uint32_t>(a.value_) + kFieldPrime - b.value_);
  }
  friend constexpr FieldElement operator*(FieldElement a, FieldElement b) {
    return FieldElement(static_cast<std::uint32_t>(a.value_) * b.value_);
  }
  friend constexpr bool operator==(FieldElement a, FieldElement b) = default;

 private:
  std::uint16_t value_ = 0;
};

// Multiplicative inverse via Fermat: a^(p-2) mod p.
inline FieldElement field_inverse(FieldElement a) {
  if (a.value() == 0) {
    throw ZeroInverse("0 has no multiplicative inverse in GF(257)");
  }
  std::uint32_t result = 1;
  std::uint32_t base = a.value();
  for (std::uint32_t exp = kFieldPrime - 2; exp != 0; exp >>= 1) {
    if (exp & 1u) {
      result = result * base % kFieldPrime;
    }
    base = base * base % kFieldPrime;
  }
  return FieldElement(result);
}

// One evaluation (x, y) of a sharing polynomial. x = 0 is never a share:
// it would expose the secret directly.
struct SharePoint {
  FieldElement x;
  FieldElement y;
};

// All share values for one x index, one element per message byte.
struct ShareStream {
  std::uint8_t x = 0;
  std::vector<FieldElement> values;

  std::size_t length() const { return values.size(); }
  friend bool operator==(const ShareStream&, const ShareStream&) = default;
};

// Deterministic coefficient source for the sharing polynomials. Kept apart
// from the hop-schedule LFSR so share secrecy and channel selection are
// independently seedable. Rejection sampling keeps the draw unbiased and
// independent of any platform's distribution implementation.
class CoefficientRng {
 public:
  explicit CoefficientRng(std::uint64_t seed) : engine_(static_cast<std::uint32_t>(seed)) {}

  FieldElement next() {
    constexpr std::uint32_t kLimit = (0xFFFFFFFFu / kFieldPrime) * kFieldPrime;
    std::uint32_t v = engine_();
    while (v >= kLimit) {
      v = engine_();
    }
    return FieldElement(v % kFieldPrime);
  }

 private:
  std::mt19937 engine_;
};

namespace detail {

inline void check_threshold(unsigned n, unsigned k) {
  if (k == 0 || k > n) {
    throw BadThreshold("threshold k must satisfy 1 <= k <= n");
  }
  if (n > 256) {
    throw BadThreshold("at most 256 shares fit distinct nonzero x in GF(257)");
  }
}

}  // namespace detail

// Splits one byte into n points of f(x) = secret + c1*x + ... + c_{k-1}*x^{k-1},
// evaluated at x = 1..n. `coeffs` must hold exactly k-1 entries.
inline std::vector<SharePoint> share_byte(std::uint8_t secret, unsigned n, unsigned k,
                                          std::span<const FieldElement> coeffs) {
  detail::check_threshold(n, k);
  if (coeffs.size() != k - 1) {
    throw std::invalid_argument("share_byte expects exactly k-1 coefficients");
  }
  std::vector<SharePoint> points;
  points.reserve(n);
  for (unsigned xi = 1; xi <= n; ++xi) {
    const FieldElement x(xi);
    FieldElement y(secret);
    FieldElement xpow(1);
    for (const FieldElement c : coeffs) {
      xpow = xpow * x;
      y = y + c * xpow;
    }
    points.push_back({x, y});
  }
  return points;
}

// Lagrange interpolation at zero over the given points. Any k valid points
// of one sharing recover the same byte; extra points of the same polynomial
// do not change the result.
inline std::uint8_t reconstruct_byte(std::span<const SharePoint> points, unsigned k) {
  if (k == 0) {
    throw BadThreshold("threshold k must be at least 1");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].x.value() == 0) {
      throw Error("share point with x = 0 is not a valid share");
    }
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i].x == points[j].x) {
        throw Error("duplicate x among share points");
      }
    }
  }
  if (points.size() < k) {
    throw InsufficientShares("need at least k share points with distinct x");
  }
  FieldElement secret(0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    FieldElement basis(1);
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      // l_i(0) factor: x_j / (x_j - x_i)
      basis = basis * points[j].x * field_inverse(points[j].x - points[i].x);
    }
    secret = secret + points[i].y * basis;
  }
  if (secret.value() > 255) {
    throw NotAByte("reconstructed value 256 is outside byte range; shares corrupted");
  }
  return static_cast<std::uint8_t>(secret.value());
}

// Byte-wise sharing of a whole message: stream j holds the y value at
// x = j+1 for every message byte, with fresh random coefficients per byte.
inline std::vector<ShareStream> share_message(std::span<const std::uint8_t> msg, unsigned n,
                                              unsigned k, CoefficientRng& rng) {
  if (msg.empty()) {
    throw EmptyMessage("cannot share an empty message");
  }
  detail::check_threshold(n, k);
  std::vector<ShareStream> streams(n);
  for (unsigned j = 0; j < n; ++j) {
    streams[j].x = static_cast<std::uint8_t>(j + 1);
    streams[j].values.reserve(msg.size());
  }
  std::vector<FieldElement> coeffs(k - 1);
  for (const std::uint8_t byte : msg) {
    for (auto& c : coeffs) {
      c = rng.next();
    }
    const auto points = share_byte(byte, n, k, coeffs);
    for (unsigned j = 0; j < n; ++j) {
      streams[j].values.push_back(points[j].y);
    }
  }
  return streams;
}

inline std::vector<std::uint8_t> reconstruct_message(std::span<const ShareStream> streams,
                                                     unsigned k) {
  if (streams.size() < k) {
    throw InsufficientShares("fewer streams than the reconstruction threshold");
  }
  const std::size_t length = streams.front().length();
  for (const auto& s : streams) {
    if (s.length() != length) {
      throw LengthMismatch("share streams must have equal length");
    }
  }
  std::vector<std::uint8_t> out;
  out.reserve(length);
  std::vector<SharePoint> points(streams.size());
  for (std::size_t i = 0; i < length; ++i) {
    for (std::size_t j = 0; j < streams.size(); ++j) {
      points[j] = {FieldElement(streams[j].x), streams[j].values[i]};
    }
    out.push_back(reconstruct_byte(points, k));
  }
  return out;
}

// Debug/fixture serialization: 1 byte x, 4-byte big-endian element count,
// then one 2-byte big-endian value per element.
inline std::vector<std::uint8_t> serialize_stream(const ShareStream& stream) {
  std::vector<std::uint8_t> out;
  out.reserve(5 + 2 * stream.values.size());
  out.push_back(stream.x);
  const std::uint32_t len = static_cast<std::uint32_t>(stream.values.size());
  for (int shift = 24; shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>((len >> shift) & 0xFF));
  }
  for (const FieldElement v : stream.values) {
    out.push_back(static_cast<std::uint8_t>(v.value() >> 8));
    out.push_back(static_cast<std::uint8_t>(v.value() & 0xFF));
  }
  return out;
}

inline ShareStream deserialize_stream(std::span<const std::uint8_t> raw) {
  if (raw.size() < 5) {
    throw Error("serialized share stream shorter than its header");
  }
  ShareStream stream;
  stream.x = raw[0];
  std::uint32_t len = 0;
  for (int i = 1; i <= 4; ++i) {
    len = (len << 8) | raw[i];
  }
  if (raw.size() != 5 + 2 * static_cast<std::size_t>(len)) {
    throw Error("serialized share stream length field inconsistent with payload");
  }
  stream.values.reserve(len);
  for (std::uint32_t i = 0; i < len; ++i) {
    const std::uint32_t v =
        (static_cast<std::uint32_t>(raw[5 + 2 * i]) << 8) | raw[5 + 2 * i + 1];
    if (v >= kFieldPrime) {
      throw Error("share element outside GF(257)");
    }
    stream.values.push_back(FieldElement(v));
  }
  return stream;
}

}  // namespace mcst
