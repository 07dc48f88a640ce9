#pragma once

// Bit-exact wire formats. Two packet kinds, discriminated by the first bit:
//
//   data  (121 bits, padded to 16 bytes):
//     1 bit  type = 1
//     8 bit  countdown: packets still to come in this stream, including this
//            one; the first packet of a stream carries the total count
//     32 bit sender device id
//     80 bit payload (10 bytes)
//
//   sync  (65 bits, padded to 9 bytes):
//     1 bit  type = 0
//     32 bit node id
//     32 bit local clock count
//
// Fields are packed MSB-first, big-endian within multi-byte fields; the 7
// trailing pad bits must be zero and are checked on decode.

#include <array>
#include <cstdint>
#include <span>

#include "mcst/errors.hpp"

namespace mcst {

inline constexpr std::size_t kDataPacketBytes = 16;
inline constexpr std::size_t kSyncPacketBytes = 9;
inline constexpr std::size_t kDataPayloadBytes = 10;
// A payload carries share elements serialized as 16-bit big-endian values.
inline constexpr std::size_t kElementsPerPacket = kDataPayloadBytes / 2;

struct DataPacket {
  std::uint8_t countdown = 1;
  std::uint32_t device_id = 0;
  std::array<std::uint8_t, kDataPayloadBytes> payload{};

  friend bool operator==(const DataPacket&, const DataPacket&) = default;
};

struct SyncPacket {
  std::uint32_t node_id = 0;
  std::uint32_t clock_count = 0;

  friend bool operator==(const SyncPacket&, const SyncPacket&) = default;
};

enum class PacketKind { Data, Sync };

namespace detail {

template <std::size_t N>
class BitWriter {
 public:
  void push(std::uint64_t value, unsigned bits) {
    for (unsigned i = bits; i-- > 0;) {
      if ((value >> i) & 1u) {
        bytes_[cursor_ / 8] |= static_cast<std::uint8_t>(1u << (7 - cursor_ % 8));
      }
      ++cursor_;
    }
  }
  std::array<std::uint8_t, N> finish() const { return bytes_; }

 private:
  std::array<std::uint8_t, N> bytes_{};
  std::size_t cursor_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint64_t read(unsigned bits) {
    std::uint64_t value = 0;
    for (unsigned i = 0; i < bits; ++i) {
      value = (value << 1) | ((bytes_[cursor_ / 8] >> (7 - cursor_ % 8)) & 1u);
      ++cursor_;
    }
    return value;
  }

  bool rest_is_zero() {
    while (cursor_ < bytes_.size() * 8) {
      if ((bytes_[cursor_ / 8] >> (7 - cursor_ % 8)) & 1u) {
        return false;
      }
      ++cursor_;
    }
    return true;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t cursor_ = 0;
};

}  // namespace detail

inline std::array<std::uint8_t, kDataPacketBytes> encode_data(const DataPacket& p) {
  if (p.countdown == 0) {
    throw ZeroCountdown("data packet countdown must be at least 1");
  }
  detail::BitWriter<kDataPacketBytes> w;
  w.push(1, 1);
  w.push(p.countdown, 8);
  w.push(p.device_id, 32);
  for (const std::uint8_t b : p.payload) {
    w.push(b, 8);
  }
  return w.finish();
}

inline DataPacket decode_data(std::span<const std::uint8_t> raw) {
  if (raw.size() != kDataPacketBytes) {
    throw Error("data packet must be exactly 16 bytes");
  }
  detail::BitReader r(raw);
  if (r.read(1) != 1) {
    throw WrongType("first bit 0: not a data packet");
  }
  DataPacket p;
  p.countdown = static_cast<std::uint8_t>(r.read(8));
  if (p.countdown == 0) {
    throw ZeroCountdown("data packet countdown must be at least 1");
  }
  p.device_id = static_cast<std::uint32_t>(r.read(32));
  for (auto& b : p.payload) {
    b = static_cast<std::uint8_t>(r.read(8));
  }
  if (!r.rest_is_zero()) {
    throw DirtyPadding("nonzero bits in data packet padding");
  }
  return p;
}

inline std::array<std::uint8_t, kSyncPacketBytes> encode_sync(const SyncPacket& p) {
  detail::BitWriter<kSyncPacketBytes> w;
  w.push(0, 1);
  w.push(p.node_id, 32);
  w.push(p.clock_count, 32);
  return w.finish();
}

inline SyncPacket decode_sync(std::span<const std::uint8_t> raw) {
  if (raw.size() != kSyncPacketBytes) {
    throw Error("sync packet must be exactly 9 bytes");
  }
  detail::BitReader r(raw);
  if (r.read(1) != 0) {
    throw WrongType("first bit 1: not a sync packet");
  }
  SyncPacket p;
  p.node_id = static_cast<std::uint32_t>(r.read(32));
  p.clock_count = static_cast<std::uint32_t>(r.read(32));
  if (!r.rest_is_zero()) {
    throw DirtyPadding("nonzero bits in sync packet padding");
  }
  return p;
}

// First-bit discrimination; looks at bit 0 only.
inline PacketKind classify(std::span<const std::uint8_t> raw) {
  if (raw.empty()) {
    throw EmptyPacket("cannot classify an empty packet");
  }
  return (raw[0] & 0x80) ? PacketKind::Data : PacketKind::Sync;
}

}  // namespace mcst
