// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HSC_UDP_STREAM_HPP
#define HSC_UDP_STREAM_HPP

#include <cstdint>
#include <vector>

#include "hsc/packetizer.hpp"

namespace hsc {

/// Loopback transport settings. The default size limit is 65,507: the
/// largest UDP payload a real socket accepts once IP and UDP headers are
/// counted against the 65,535 datagram maximum.
struct StreamConfig {
  size_t size_limit = 65507;
  LossPolicy loss_policy = LossPolicy::DropFrame;
  double drop_rate = 0.0;   // synthetic sender-side fragment drop probability
  uint64_t drop_seed = 1;
  int timeout_ms = 3000;
  int pace_us = 100;        // inter-packet pacing; keeps the rx buffer ahead
};

struct FrameStreamStats {
  uint32_t frame_id = 0;
  int tier = 0;
  size_t bytes = 0;
  size_t fragments = 0;
  bool delivered = false;
  double end_to_end_ms = 0.0; // first-fragment send to last-fragment arrival
};

struct TierStats {
  int tier = 0;
  double first_delivery_ms = 0.0; // batch start to first packet of this tier
};

struct StreamReport {
  std::vector<FrameStreamStats> frames;
  std::vector<TierStats> tiers; // ascending tier order
  ReassemblyResult reassembly;
  size_t packets_sent = 0;
  size_t packets_dropped = 0;  // synthetic drops
  size_t packets_received = 0;
  double elapsed_ms = 0.0;
};

/// Packetizes tier-ascending frames, ships them over a loopback UDP socket
/// pair (sender and receiver run as independent tasks sharing only the
/// socket), reassembles, and reports timing. Raises Transport errors on
/// socket failures.
StreamReport stream_loopback(
    const std::vector<std::pair<int, EncodedFrame>>& tiered_frames,
    const StreamConfig& cfg);

} // namespace hsc

#endif
