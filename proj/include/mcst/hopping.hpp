#pragma once

// Channel hopping: a 17-bit maximal-length LFSR both endpoints replay from a
// shared seed, rejection-sampled onto channel indices, plus the fixed
// index -> frequency table for the 2.4-2.5 GHz band (100 MHz split into
// 10^5 channels of 1 kHz).

#include <algorithm>
#include <cstdint>
#include <vector>

#include "mcst/errors.hpp"

namespace mcst {

inline constexpr std::uint32_t kIsmChannelCount = 100000;
inline constexpr std::uint64_t kIsmBaseHz = 2'400'000'000;
inline constexpr std::uint64_t kChannelWidthHz = 1'000;

// Fibonacci LFSR over x^17 + x^14 + 1, the smallest maximal-length register
// whose range covers the 10^5 channel indices. The register is never zero
// and the output sequence has period exactly 2^17 - 1 = 131071.
class Lfsr {
 public:
  static constexpr std::uint32_t kBits = 17;
  static constexpr std::uint32_t kMask = (1u << kBits) - 1;
  static constexpr std::uint32_t kPeriod = kMask;

  explicit Lfsr(std::uint32_t seed) : seed_(seed & kMask), register_(seed & kMask) {
    if (register_ == 0) {
      throw ZeroSeed("LFSR seed must be a nonzero 17-bit value");
    }
  }

  // One step: feedback = bit17 XOR bit14, shifted in at the low end.
  // Returns the new register value, in [1, 131071].
  std::uint32_t next() {
    const std::uint32_t feedback = ((register_ >> 16) ^ (register_ >> 13)) & 1u;
    register_ = ((register_ << 1) | feedback) & kMask;
    ++steps_;
    return register_;
  }

  std::uint32_t register_value() const { return register_; }
  std::uint32_t seed() const { return seed_; }
  std::uint64_t steps() const { return steps_; }

  friend bool operator==(const Lfsr&, const Lfsr&) = default;

 private:
  std::uint32_t seed_;
  std::uint32_t register_;
  std::uint64_t steps_ = 0;
};

// Advances the LFSR until it emits a value in [1, channel_count] and maps it
// to the index one below. Rejection keeps the draw unbiased: over one full
// period every register value occurs exactly once.
inline std::uint32_t draw_channel(Lfsr& lfsr, std::uint32_t channel_count = kIsmChannelCount) {
  if (channel_count == 0 || channel_count > Lfsr::kMask) {
    throw OutOfRange("channel count must be in [1, 131071]");
  }
  for (;;) {
    const std::uint32_t v = lfsr.next();
    if (v <= channel_count) {
      return v - 1;
    }
  }
}

// The ordered distinct channels one session hops over, replayable from the
// seed on the receiving side.
struct HopSchedule {
  std::vector<std::uint32_t> channels;
  std::uint32_t session_seed = 0;
  std::uint64_t draw_count = 0;  // total LFSR advances consumed

  friend bool operator==(const HopSchedule&, const HopSchedule&) = default;
};

// Draws `count` distinct channel indices. A repeated index is drawn again;
// with a maximal LFSR that cannot happen inside one period, but the loop
// also covers any future register swap.
inline HopSchedule draw_distinct_channels(std::uint32_t seed, unsigned count,
                                          std::uint32_t channel_count = kIsmChannelCount) {
  if (count == 0 || count > channel_count) {
    throw OutOfRange("cannot draw more distinct channels than exist");
  }
  Lfsr lfsr(seed);
  HopSchedule schedule;
  schedule.session_seed = lfsr.seed();
  schedule.channels.reserve(count);
  while (schedule.channels.size() < count) {
    const std::uint32_t c = draw_channel(lfsr, channel_count);
    if (std::find(schedule.channels.begin(), schedule.channels.end(), c) ==
        schedule.channels.end()) {
      schedule.channels.push_back(c);
    }
  }
  schedule.draw_count = lfsr.steps();
  return schedule;
}

// Session schedule: between 5 and 10 parts (at least 5 channels for the
// security target, at most 10 to bound processor load).
inline HopSchedule build_schedule(std::uint32_t seed, unsigned n_parts,
                                  std::uint32_t channel_count = kIsmChannelCount) {
  if (n_parts < 5 || n_parts > 10) {
    throw BadPartCount("part count must be between 5 and 10");
  }
  return draw_distinct_channels(seed, n_parts, channel_count);
}

// index -> Hz over the fixed ISM grid: 2.4 GHz + index * 1 kHz.
inline std::uint64_t channel_to_frequency_hz(std::uint32_t channel) {
  if (channel >= kIsmChannelCount) {
    throw OutOfRange("channel index outside [0, 100000)");
  }
  return kIsmBaseHz + static_cast<std::uint64_t>(channel) * kChannelWidthHz;
}

}  // namespace mcst
