// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HSC_PACKETIZER_HPP
#define HSC_PACKETIZER_HPP

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "hsc/frame.hpp"

namespace hsc {

/// Application-layer fragment. Wire layout (little-endian):
///
///   offset  size  field
///   0       4     frame_id (u32)
///   4       2     fragment_index (u16)
///   6       2     fragment_count (u16)
///   8       1     tier (u8)
///   9       1     flags (u8): bit 0 marks the last fragment
///   10      2     payload_len (u16)
///   12      ...   payload
struct Packet {
  static constexpr size_t kHeaderSize = 12;
  static constexpr uint8_t kFlagLastFragment = 0x01;

  uint32_t frame_id = 0;
  uint16_t fragment_index = 0;
  uint16_t fragment_count = 1;
  uint8_t tier = 0;
  uint8_t flags = 0;
  std::vector<uint8_t> payload;

  size_t wire_size() const { return kHeaderSize + payload.size(); }
  std::vector<uint8_t> serialize() const;
  static Packet parse(std::span<const uint8_t> bytes);

  bool operator==(const Packet&) const = default;
};

enum class LossPolicy { DropFrame, DeliverPartial };

/// The 65,535 default mirrors the UDP length-field maximum; transports
/// that hit real sockets should use 65,507 (payload after IP+UDP headers).
struct PacketizerConfig {
  size_t size_limit = 65535;
  LossPolicy loss_policy = LossPolicy::DropFrame;

  size_t max_fragment_payload() const { return size_limit - Packet::kHeaderSize; }
};

/// Splits tier-ascending frames into fragments. frame_id is the position
/// in the input sequence. Emission order: tier, then frame, then fragment.
std::vector<Packet> packetize(
    const std::vector<std::pair<int, EncodedFrame>>& tiered_frames,
    const PacketizerConfig& cfg);

struct LossRecord {
  uint32_t frame_id = 0;
  uint16_t fragments_received = 0;
  uint16_t fragment_count = 0;
  std::vector<uint8_t> partial_bytes; // filled under DeliverPartial, gaps zeroed
};

struct ReassemblyResult {
  std::map<uint32_t, EncodedFrame> frames;
  std::vector<LossRecord> losses;
};

/// Rebuilds frames from fragments in any arrival order. Complete frames
/// are byte-exact; incomplete ones follow cfg.loss_policy.
ReassemblyResult reassemble(const std::vector<Packet>& packets,
                            const PacketizerConfig& cfg);

/// True when the whole serialized frame fits one fragment payload.
bool fits_single_packet(const EncodedFrame& frame, const PacketizerConfig& cfg);

} // namespace hsc

#endif
