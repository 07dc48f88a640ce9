#pragma once

// Transceiver logic. The master side prepares a session:
//
//   plain -> hex digest -> ROT13 -> length-framed bytes -> k-of-n share
//   streams -> per-stream packets -> hop schedule binding stream j to the
//   j-th drawn channel for the whole session.
//
// The slave side transmits one packet per stream per slot. The receiver
// replays the schedule from the shared seed, opens one reading pipe per
// part, and reverses the pipeline. A separate sync round floods local clock
// counts and adopts the maximum.
//
// The frame is a 4-byte big-endian length prefix on the ROT13 text; the
// countdown field alone gives packet count, not byte count, so the length
// travels inside the shared payload. Each packet carries 5 share elements
// of 16 bits; the last packet of a stream is zero-filled.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mcst/codec.hpp"
#include "mcst/errors.hpp"
#include "mcst/gfshare.hpp"
#include "mcst/hopping.hpp"
#include "mcst/medium.hpp"
#include "mcst/packet.hpp"

namespace mcst {

inline constexpr std::size_t kMaxPacketsPerStream = 255;  // countdown is 8 bits

struct NodeConfig {
  std::uint32_t device_id = 0;
  std::uint32_t hop_seed = 1;     // LFSR seed, provisioned network-wide
  std::uint64_t share_seed = 1;   // coefficient RNG seed, independent of hop_seed
  unsigned n_parts = 5;           // streams per session, 5..10
  unsigned k = 3;                 // reconstruction threshold
  std::uint32_t channel_count = kIsmChannelCount;
  std::uint64_t t_max = 1'000'000;  // local-clock milestone for sync rounds
};

struct SessionPlan {
  HopSchedule schedule;                          // channel j carries stream j
  std::vector<ShareStream> streams;              // master buffer
  std::vector<std::vector<DataPacket>> packets;  // outgoing, slot order per stream
  std::size_t packets_per_stream = 0;
};

struct NodeState {
  NodeConfig config;
  std::uint64_t local_clock = 0;
  bool ready_flag = false;            // session fully staged for the slaves
  SessionPlan plan;
  std::vector<bool> slave_done;       // per-slave success flag
};

namespace detail {

inline std::vector<std::uint8_t> frame_rot_text(const std::string& rot) {
  std::vector<std::uint8_t> frame;
  frame.reserve(4 + rot.size());
  const std::uint32_t len = static_cast<std::uint32_t>(rot.size());
  for (int shift = 24; shift >= 0; shift -= 8) {
    frame.push_back(static_cast<std::uint8_t>((len >> shift) & 0xFF));
  }
  frame.insert(frame.end(), rot.begin(), rot.end());
  return frame;
}

inline std::vector<DataPacket> packetize_stream(const ShareStream& stream,
                                                std::uint32_t device_id,
                                                std::size_t packets_per_stream) {
  std::vector<DataPacket> packets(packets_per_stream);
  for (std::size_t p = 0; p < packets_per_stream; ++p) {
    DataPacket& packet = packets[p];
    packet.countdown = static_cast<std::uint8_t>(packets_per_stream - p);
    packet.device_id = device_id;
    for (std::size_t e = 0; e < kElementsPerPacket; ++e) {
      const std::size_t index = p * kElementsPerPacket + e;
      const std::uint16_t v =
          index < stream.values.size() ? stream.values[index].value() : 0;
      packet.payload[2 * e] = static_cast<std::uint8_t>(v >> 8);
      packet.payload[2 * e + 1] = static_cast<std::uint8_t>(v & 0xFF);
    }
  }
  return packets;
}

}  // namespace detail

// Runs the whole master pipeline and stages the session. Returns the plan
// that the slaves transmit from.
inline const SessionPlan& master_prepare(NodeState& node, std::span<const std::uint8_t> plain) {
  if (plain.empty()) {
    throw EmptyMessage("nothing to send");
  }
  const NodeConfig& cfg = node.config;
  SessionPlan plan;
  plan.schedule = build_schedule(cfg.hop_seed, cfg.n_parts, cfg.channel_count);

  const std::string digest = to_hex_digest(plain);
  const std::string rot = rot13(digest);
  const std::vector<std::uint8_t> frame = detail::frame_rot_text(rot);

  plan.packets_per_stream = (frame.size() + kElementsPerPacket - 1) / kElementsPerPacket;
  if (plan.packets_per_stream > kMaxPacketsPerStream) {
    throw StreamTooLong("message needs more than 255 packets per stream");
  }

  CoefficientRng rng(cfg.share_seed);
  plan.streams = share_message(frame, cfg.n_parts, cfg.k, rng);
  plan.packets.reserve(cfg.n_parts);
  for (const ShareStream& stream : plan.streams) {
    plan.packets.push_back(
        detail::packetize_stream(stream, cfg.device_id, plan.packets_per_stream));
  }

  node.plan = std::move(plan);
  node.slave_done.assign(cfg.n_parts, false);
  node.ready_flag = true;
  return node.plan;
}

// One slot of slave work: each stream's next packet goes out on its bound
// channel. A slave switches its success flag on when its stream is done.
inline void slave_transmit(NodeState& node, Medium& medium, std::uint64_t slot) {
  if (!node.ready_flag) {
    throw Error("no session staged: master_prepare must run first");
  }
  const SessionPlan& plan = node.plan;
  node.local_clock += 1;  // one clock pulse per slot
  if (slot >= plan.packets_per_stream) {
    return;
  }
  for (std::size_t j = 0; j < plan.packets.size(); ++j) {
    const auto raw = encode_data(plan.packets[j][slot]);
    const TxOutcome outcome = medium.transmit(
        plan.schedule.channels[j], std::vector<std::uint8_t>(raw.begin(), raw.end()), slot);
    if (outcome == TxOutcome::Collided) {
      throw MediumRejected("collision on channel " + std::to_string(plan.schedule.channels[j]));
    }
    if (slot + 1 == plan.packets_per_stream) {
      node.slave_done[j] = true;
    }
  }
}

// Receiver step 1: replay the schedule from the shared seed. The returned
// channels are the reading pipes, exactly n_parts of them.
inline HopSchedule receiver_open(const NodeConfig& config) {
  return build_schedule(config.hop_seed, config.n_parts, config.channel_count);
}

namespace detail {

// Orders one pipe's packets by descending countdown and extracts the share
// stream, or rejects the pipe as incomplete. The countdown set of a complete
// stream is exactly {1..total}.
inline std::optional<ShareStream> assemble_stream(std::vector<DataPacket> packets,
                                                  std::uint8_t x) {
  if (packets.empty()) {
    return std::nullopt;
  }
  std::sort(packets.begin(), packets.end(),
            [](const DataPacket& a, const DataPacket& b) { return a.countdown > b.countdown; });
  const std::size_t total = packets.front().countdown;
  if (packets.size() != total) {
    return std::nullopt;
  }
  for (std::size_t i = 0; i < total; ++i) {
    if (packets[i].countdown != total - i) {
      return std::nullopt;
    }
  }
  ShareStream stream;
  stream.x = x;
  stream.values.reserve(total * kElementsPerPacket);
  for (const DataPacket& packet : packets) {
    for (std::size_t e = 0; e < kElementsPerPacket; ++e) {
      const std::uint32_t v = (static_cast<std::uint32_t>(packet.payload[2 * e]) << 8) |
                              packet.payload[2 * e + 1];
      if (v >= kFieldPrime) {
        throw NotAByte("received share element outside GF(257)");
      }
      stream.values.push_back(FieldElement(v));
    }
  }
  return stream;
}

}  // namespace detail

// Receiver steps 5-8: per pipe, order packets and rebuild the share stream;
// reconstruct, then undo ROT13, hex and the length frame. `pipes_data` is
// indexed by schedule position (stream j arrived on the j-th drawn channel),
// empty vectors standing in for silent pipes.
inline std::vector<std::uint8_t> receiver_assemble(
    std::span<const std::vector<DataPacket>> pipes_data, unsigned k) {
  std::vector<ShareStream> streams;
  for (std::size_t j = 0; j < pipes_data.size(); ++j) {
    auto stream =
        detail::assemble_stream(pipes_data[j], static_cast<std::uint8_t>(j + 1));
    if (stream) {
      streams.push_back(std::move(*stream));
    }
  }
  if (streams.size() < k) {
    throw InsufficientShares("fewer than k complete share streams received");
  }
  const std::vector<std::uint8_t> padded = reconstruct_message(streams, k);

  if (padded.size() < 4) {
    throw FrameCorrupt("frame shorter than its length prefix");
  }
  std::uint32_t len = 0;
  for (int i = 0; i < 4; ++i) {
    len = (len << 8) | padded[i];
  }
  if (4 + static_cast<std::size_t>(len) > padded.size() ||
      padded.size() - 4 - len >= kElementsPerPacket) {
    throw FrameCorrupt("length prefix inconsistent with received data");
  }
  for (std::size_t i = 4 + len; i < padded.size(); ++i) {
    if (padded[i] != 0) {
      throw FrameCorrupt("nonzero bytes after the framed text");
    }
  }
  const std::string rot(padded.begin() + 4, padded.begin() + 4 + len);
  return from_hex_digest(rot13(rot));
}

struct SyncOutcome {
  std::uint64_t adopted_clock = 0;
  std::uint32_t source_device = 0;
};

struct SyncRoundResult {
  std::vector<SyncOutcome> outcomes;            // aligned with the node list
  std::vector<std::uint32_t> unsynced_devices;  // lossy variant only
};

// One flooding round: every node emits a sync packet with its clock count,
// adopts the maximum of everything it saw (its own count included), and
// reports which device's packet set its time (itself if it already held the
// maximum; ties go to the smallest device id). Over a lossless medium all
// clocks are equal afterwards; with loss, stragglers are reported.
inline SyncRoundResult sync_round(std::vector<NodeState>& nodes, Medium& medium) {
  std::vector<SyncPacket> floods;
  floods.reserve(nodes.size());
  std::uint64_t global_max = 0;
  for (const NodeState& node : nodes) {
    if (node.local_clock > 0xFFFFFFFFull) {
      throw Error("local clock exceeds the 32-bit sync field");
    }
    floods.push_back({node.config.device_id, static_cast<std::uint32_t>(node.local_clock)});
    global_max = std::max(global_max, node.local_clock);
  }

  SyncRoundResult result;
  result.outcomes.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::uint32_t best_clock = 0;
    std::uint32_t best_device = 0;
    bool any = false;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (j == i || medium.roll_loss()) {
        continue;
      }
      // The flood crosses the wire: round-trip through the codec.
      const auto raw = encode_sync(floods[j]);
      const SyncPacket packet = decode_sync(raw);
      if (!any || packet.clock_count > best_clock ||
          (packet.clock_count == best_clock && packet.node_id < best_device)) {
        best_clock = packet.clock_count;
        best_device = packet.node_id;
        any = true;
      }
    }
    SyncOutcome outcome;
    if (!any || nodes[i].local_clock >= best_clock) {
      outcome.adopted_clock = nodes[i].local_clock;
      outcome.source_device = nodes[i].config.device_id;
    } else {
      outcome.adopted_clock = best_clock;
      outcome.source_device = best_device;
    }
    nodes[i].local_clock = outcome.adopted_clock;
    result.outcomes.push_back(outcome);
  }
  for (const NodeState& node : nodes) {
    if (node.local_clock != global_max) {
      result.unsynced_devices.push_back(node.config.device_id);
    }
  }
  return result;
}

// Full session driver: prepare, transmit slot by slot, listen on the
// replayed schedule, reassemble. Sender and receiver configs must agree on
// hop_seed, n_parts and k for the round trip to succeed.
inline std::vector<std::uint8_t> run_session(NodeState& sender, const NodeConfig& receiver,
                                             Medium& medium,
                                             std::span<const std::uint8_t> plain) {
  master_prepare(sender, plain);
  const HopSchedule pipes = receiver_open(receiver);

  std::unordered_map<std::uint32_t, std::size_t> position;
  for (std::size_t j = 0; j < pipes.channels.size(); ++j) {
    position.emplace(pipes.channels[j], j);
  }
  std::vector<std::vector<DataPacket>> pipes_data(pipes.channels.size());
  for (std::uint64_t slot = 0; slot < sender.plan.packets_per_stream; ++slot) {
    slave_transmit(sender, medium, slot);
    for (const Medium::Heard& heard : medium.listen(pipes.channels, slot)) {
      if (classify(heard.packet) != PacketKind::Data) {
        continue;
      }
      pipes_data[position.at(heard.channel)].push_back(decode_data(heard.packet));
    }
  }
  return receiver_assemble(pipes_data, receiver.k);
}

}  // namespace mcst
