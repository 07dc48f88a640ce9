#pragma once

// Deterministic broadcast-medium simulation: slotted time over a configurable
// number of channels (the full ISM grid by default, small counts for
// desk-scale experiments). A channel-slot cell delivers exactly one packet;
// two or more transmissions in one cell destroy each other and are logged as
// a collision. Eavesdropping is passive and never perturbs delivery.

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "mcst/errors.hpp"
#include "mcst/hopping.hpp"

namespace mcst {

enum class TxOutcome { Delivered, Collided, Lost };

inline const char* to_string(TxOutcome o) {
  switch (o) {
    case TxOutcome::Delivered: return "delivered";
    case TxOutcome::Collided: return "collided";
    case TxOutcome::Lost: return "lost";
  }
  return "?";
}

struct Transmission {
  std::uint64_t slot = 0;
  std::uint32_t channel = 0;
  std::vector<std::uint8_t> packet;
  TxOutcome outcome = TxOutcome::Delivered;
};

class Medium {
 public:
  explicit Medium(std::uint32_t channel_count = kIsmChannelCount, double loss_probability = 0.0,
                  std::uint64_t loss_seed = 1)
      : channel_count_(channel_count),
        loss_probability_(loss_probability),
        rng_(static_cast<std::uint32_t>(loss_seed)) {}

  std::uint32_t channel_count() const { return channel_count_; }
  double loss_probability() const { return loss_probability_; }

  // Samples the loss model once. Also used by the sync round for its
  // per-delivery drops so one seed governs the whole lossy scenario.
  bool roll_loss() {
    if (loss_probability_ <= 0.0) return false;
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < loss_probability_;
  }

  // Places a packet into the channel-slot cell. The returned outcome is
  // final for Lost and Collided; a Delivered packet can still be collided
  // retroactively by a later transmission in the same cell, which the
  // transmission log reflects.
  TxOutcome transmit(std::uint32_t channel, std::vector<std::uint8_t> packet,
                     std::uint64_t slot) {
    if (channel >= channel_count_) {
      throw BadChannel("channel index outside the medium");
    }
    log_.push_back({slot, channel, std::move(packet), TxOutcome::Delivered});
    const std::size_t index = log_.size() - 1;
    if (roll_loss()) {
      log_[index].outcome = TxOutcome::Lost;
      return TxOutcome::Lost;
    }
    auto& cell = grid_[slot][channel];
    cell.push_back(index);
    if (cell.size() > 1) {
      if (cell.size() == 2) {
        collisions_.emplace_back(slot, channel);
        log_[cell[0]].outcome = TxOutcome::Collided;
      }
      log_[index].outcome = TxOutcome::Collided;
      return TxOutcome::Collided;
    }
    return TxOutcome::Delivered;
  }

  struct Heard {
    std::uint32_t channel;
    std::vector<std::uint8_t> packet;
  };

  // Read-only view of what a set of reading pipes picks up in one slot:
  // cleanly delivered packets only.
  std::vector<Heard> listen(std::span<const std::uint32_t> channels, std::uint64_t slot) const {
    std::vector<Heard> heard;
    const auto slot_it = grid_.find(slot);
    if (slot_it == grid_.end()) {
      return heard;
    }
    for (const std::uint32_t channel : channels) {
      if (channel >= channel_count_) {
        throw BadChannel("listen channel outside the medium");
      }
      const auto cell_it = slot_it->second.find(channel);
      if (cell_it == slot_it->second.end() || cell_it->second.size() != 1) {
        continue;
      }
      const Transmission& tx = log_[cell_it->second.front()];
      heard.push_back({channel, tx.packet});
    }
    return heard;
  }

  const std::vector<Transmission>& transmissions() const { return log_; }
  const std::vector<std::pair<std::uint64_t, std::uint32_t>>& collision_log() const {
    return collisions_;
  }

 private:
  std::uint32_t channel_count_;
  double loss_probability_;
  std::mt19937 rng_;
  std::vector<Transmission> log_;
  // slot -> channel -> indices into log_ of non-lost transmissions
  std::map<std::uint64_t, std::unordered_map<std::uint32_t, std::vector<std::size_t>>> grid_;
  std::vector<std::pair<std::uint64_t, std::uint32_t>> collisions_;
};

// Passive eavesdropper. Two interpretations of the capture model are
// provided: per-packet independent capture with probability q, and a
// receiver tuned to a fixed set of m channels for the whole session.
struct Adversary {
  enum class Mode { IndependentPerPacket, FixedChannelSet };

  struct Capture {
    std::uint64_t slot;
    std::uint32_t channel;
    std::vector<std::uint8_t> packet;
  };

  Mode mode = Mode::IndependentPerPacket;
  double capture_probability = 1.0 / kIsmChannelCount;
  std::unordered_set<std::uint32_t> tuned_channels;
  std::vector<Capture> captured;

  static Adversary independent(double q) {
    Adversary a;
    a.mode = Mode::IndependentPerPacket;
    a.capture_probability = q;
    return a;
  }

  static Adversary fixed_set(std::unordered_set<std::uint32_t> channels) {
    Adversary a;
    a.mode = Mode::FixedChannelSet;
    a.tuned_channels = std::move(channels);
    return a;
  }

  // m distinct channels drawn uniformly from [0, channel_count).
  static Adversary fixed_set(std::uint32_t m, std::uint32_t channel_count, std::mt19937& rng) {
    if (m > channel_count) {
      throw OutOfRange("adversary cannot tune more channels than exist");
    }
    std::unordered_set<std::uint32_t> channels;
    channels.reserve(m);
    // Floyd's sampling: uniform m-subset without materializing the range.
    for (std::uint32_t j = channel_count - m; j < channel_count; ++j) {
      std::uint32_t t = std::uniform_int_distribution<std::uint32_t>(0, j)(rng);
      if (!channels.insert(t).second) {
        channels.insert(j);
      }
    }
    return fixed_set(std::move(channels));
  }
};

// Applies the adversary's capture model to one slot of traffic and appends
// to its capture log. Only cleanly delivered packets are observable; a
// collision garbles the air for the eavesdropper as well. Returns how many
// packets were newly captured.
inline std::size_t adversary_observe(Adversary& adv, const Medium& medium, std::uint64_t slot,
                                     std::mt19937& rng) {
  std::size_t before = adv.captured.size();
  for (const Transmission& tx : medium.transmissions()) {
    if (tx.slot != slot || tx.outcome != TxOutcome::Delivered) {
      continue;
    }
    bool caught = false;
    if (adv.mode == Adversary::Mode::IndependentPerPacket) {
      caught = std::uniform_real_distribution<double>(0.0, 1.0)(rng) < adv.capture_probability;
    } else {
      caught = adv.tuned_channels.contains(tx.channel);
    }
    if (caught) {
      adv.captured.push_back({tx.slot, tx.channel, tx.packet});
    }
  }
  return adv.captured.size() - before;
}

}  // namespace mcst
