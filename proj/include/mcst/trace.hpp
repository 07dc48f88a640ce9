#pragma once

// Trace exporters: one record per medium event, as JSON lines or CSV
// (slot, channel, event, packet-hex).

#include <ostream>
#include <span>
#include <string>

#include "mcst/codec.hpp"
#include "mcst/medium.hpp"

namespace mcst {

inline std::string packet_hex(std::span<const std::uint8_t> packet) {
  return to_hex_digest(packet);
}

inline void write_trace_jsonl(std::ostream& out, const Medium& medium) {
  for (const Transmission& tx : medium.transmissions()) {
    out << "{\"slot\":" << tx.slot << ",\"channel\":" << tx.channel << ",\"event\":\""
        << to_string(tx.outcome) << "\",\"packet\":\"" << packet_hex(tx.packet) << "\"}\n";
  }
}

inline void write_trace_csv(std::ostream& out, const Medium& medium) {
  out << "slot,channel,event,packet\n";
  for (const Transmission& tx : medium.transmissions()) {
    out << tx.slot << ',' << tx.channel << ',' << to_string(tx.outcome) << ','
        << packet_hex(tx.packet) << '\n';
  }
}

inline void write_captures_csv(std::ostream& out, const Adversary& adversary) {
  out << "slot,channel,event,packet\n";
  for (const Adversary::Capture& c : adversary.captured) {
    out << c.slot << ',' << c.channel << ",captured," << packet_hex(c.packet) << '\n';
  }
}

}  // namespace mcst
