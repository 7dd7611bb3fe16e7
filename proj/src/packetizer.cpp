// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#include "hsc/packetizer.hpp"

#include <algorithm>
#include <string>

#include "hsc/error.hpp"

namespace hsc {

namespace {

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v));
  out.push_back(static_cast<uint8_t>(v >> 8));
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  put_u16(out, static_cast<uint16_t>(v));
  put_u16(out, static_cast<uint16_t>(v >> 16));
}

uint16_t get_u16(std::span<const uint8_t> b, size_t off) {
  return static_cast<uint16_t>(b[off] | (b[off + 1] << 8));
}

uint32_t get_u32(std::span<const uint8_t> b, size_t off) {
  return static_cast<uint32_t>(get_u16(b, off)) |
         (static_cast<uint32_t>(get_u16(b, off + 2)) << 16);
}

void check_config(const PacketizerConfig& cfg) {
  if (cfg.size_limit <= Packet::kHeaderSize)
    raise(ErrorKind::InvalidParameter, "packet size limit must exceed the header");
  if (cfg.size_limit > 65535)
    raise(ErrorKind::InvalidParameter, "packet size limit exceeds 65535");
}

} // namespace

std::vector<uint8_t> Packet::serialize() const {
  std::vector<uint8_t> out;
  out.reserve(wire_size());
  put_u32(out, frame_id);
  put_u16(out, fragment_index);
  put_u16(out, fragment_count);
  out.push_back(tier);
  out.push_back(flags);
  put_u16(out, static_cast<uint16_t>(payload.size()));
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

Packet Packet::parse(std::span<const uint8_t> bytes) {
  if (bytes.size() < kHeaderSize)
    raise(ErrorKind::Protocol, "packet shorter than header");
  Packet p;
  p.frame_id = get_u32(bytes, 0);
  p.fragment_index = get_u16(bytes, 4);
  p.fragment_count = get_u16(bytes, 6);
  p.tier = bytes[8];
  p.flags = bytes[9];
  uint16_t len = get_u16(bytes, 10);
  if (bytes.size() != kHeaderSize + len)
    raise(ErrorKind::Protocol, "packet length field disagrees with datagram size");
  if (p.fragment_index >= p.fragment_count)
    raise(ErrorKind::Protocol, "fragment index beyond fragment count");
  p.payload.assign(bytes.begin() + kHeaderSize, bytes.end());
  return p;
}

std::vector<Packet> packetize(
    const std::vector<std::pair<int, EncodedFrame>>& tiered_frames,
    const PacketizerConfig& cfg) {
  check_config(cfg);
  for (size_t i = 1; i < tiered_frames.size(); ++i)
    if (tiered_frames[i].first < tiered_frames[i - 1].first)
      raise(ErrorKind::ContractViolation, "packetize: frames must be tier-ascending");

  const size_t max_payload = cfg.max_fragment_payload();
  std::vector<Packet> out;
  for (size_t f = 0; f < tiered_frames.size(); ++f) {
    const auto& [tier, frame] = tiered_frames[f];
    if (tier < 0 || tier > 255)
      raise(ErrorKind::InvalidParameter, "tier out of byte range");
    std::vector<uint8_t> bytes = frame.serialize();
    size_t fragments = (bytes.size() + max_payload - 1) / max_payload;
    if (fragments == 0) fragments = 1;
    if (fragments > 65535)
      raise(ErrorKind::Oversize,
            "frame " + std::to_string(f) + " needs " + std::to_string(fragments) +
                " fragments; limit is 65535");
    for (size_t i = 0; i < fragments; ++i) {
      Packet p;
      p.frame_id = static_cast<uint32_t>(f);
      p.fragment_index = static_cast<uint16_t>(i);
      p.fragment_count = static_cast<uint16_t>(fragments);
      p.tier = static_cast<uint8_t>(tier);
      size_t begin = i * max_payload;
      size_t end = std::min(begin + max_payload, bytes.size());
      p.payload.assign(bytes.begin() + static_cast<ptrdiff_t>(begin),
                       bytes.begin() + static_cast<ptrdiff_t>(end));
      if (i + 1 == fragments) p.flags |= Packet::kFlagLastFragment;
      out.push_back(std::move(p));
    }
  }
  return out;
}

ReassemblyResult reassemble(const std::vector<Packet>& packets,
                            const PacketizerConfig& cfg) {
  check_config(cfg);

  struct Partial {
    uint16_t fragment_count = 0;
    uint16_t received = 0;
    std::vector<std::vector<uint8_t>> fragments;
    std::vector<bool> present;
  };
  std::map<uint32_t, Partial> partials;

  for (const Packet& p : packets) {
    if (p.wire_size() > cfg.size_limit)
      raise(ErrorKind::Protocol, "packet exceeds configured size limit");
    Partial& part = partials[p.frame_id];
    if (part.fragment_count == 0) {
      part.fragment_count = p.fragment_count;
      part.fragments.resize(p.fragment_count);
      part.present.assign(p.fragment_count, false);
    } else if (part.fragment_count != p.fragment_count) {
      raise(ErrorKind::Protocol,
            "inconsistent fragment count for frame " + std::to_string(p.frame_id));
    }
    if (p.fragment_index >= part.fragment_count)
      raise(ErrorKind::Protocol, "fragment index beyond fragment count");
    if (!part.present[p.fragment_index]) {
      part.fragments[p.fragment_index] = p.payload;
      part.present[p.fragment_index] = true;
      ++part.received;
    }
  }

  ReassemblyResult result;
  for (auto& [frame_id, part] : partials) {
    if (part.received == part.fragment_count) {
      std::vector<uint8_t> bytes;
      for (const auto& frag : part.fragments)
        bytes.insert(bytes.end(), frag.begin(), frag.end());
      result.frames.emplace(frame_id, EncodedFrame::parse(bytes));
      continue;
    }
    LossRecord loss{frame_id, part.received, part.fragment_count, {}};
    if (cfg.loss_policy == LossPolicy::DeliverPartial) {
      const size_t max_payload = cfg.max_fragment_payload();
      for (size_t i = 0; i < part.fragments.size(); ++i) {
        if (!part.present[i]) {
          // Missing tail length is unknowable; interior gaps are full-size.
          if (i + 1 < part.fragments.size())
            loss.partial_bytes.insert(loss.partial_bytes.end(), max_payload, 0);
          continue;
        }
        const auto& frag = part.fragments[i];
        loss.partial_bytes.insert(loss.partial_bytes.end(), frag.begin(), frag.end());
      }
    }
    result.losses.push_back(std::move(loss));
  }
  return result;
}

bool fits_single_packet(const EncodedFrame& frame, const PacketizerConfig& cfg) {
  check_config(cfg);
  return frame.serialized_size() <= cfg.max_fragment_payload();
}

} // namespace hsc
