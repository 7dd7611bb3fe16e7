// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#include "hsc/frame.hpp"

#include <bit>
#include <cstring>
#include <string>

#include "hsc/error.hpp"

namespace hsc {

namespace {

constexpr size_t kFixedHeaderSize = 40;

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v));
  out.push_back(static_cast<uint8_t>(v >> 8));
  out.push_back(static_cast<uint8_t>(v >> 16));
  out.push_back(static_cast<uint8_t>(v >> 24));
}

void put_f32(std::vector<uint8_t>& out, float v) {
  put_u32(out, std::bit_cast<uint32_t>(v));
}

uint32_t get_u32(std::span<const uint8_t> b, size_t off) {
  return static_cast<uint32_t>(b[off]) | (static_cast<uint32_t>(b[off + 1]) << 8) |
         (static_cast<uint32_t>(b[off + 2]) << 16) |
         (static_cast<uint32_t>(b[off + 3]) << 24);
}

float get_f32(std::span<const uint8_t> b, size_t off) {
  return std::bit_cast<float>(get_u32(b, off));
}

size_t extension_size(CodecId id) {
  return id == CodecId::KdTree ? 1 : 4;
}

} // namespace

size_t EncodedFrame::serialized_size() const {
  return kFixedHeaderSize + extension_size(codec_id) + payload.size();
}

std::vector<uint8_t> EncodedFrame::serialize() const {
  std::vector<uint8_t> out;
  out.reserve(serialized_size());
  for (uint8_t m : kMagic) out.push_back(m);
  out.push_back(kVersion);
  out.push_back(static_cast<uint8_t>(codec_id));
  out.push_back(lattice_bits);
  out.push_back(profile_id);
  put_u32(out, point_count);
  for (float f : bbox) put_f32(out, f);
  put_u32(out, static_cast<uint32_t>(payload.size()));
  if (codec_id == CodecId::KdTree)
    out.push_back(compression_level);
  else
    put_f32(out, scale);
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

EncodedFrame EncodedFrame::parse(std::span<const uint8_t> bytes) {
  if (bytes.size() < kFixedHeaderSize)
    raise(ErrorKind::Format, "frame shorter than fixed header");
  if (std::memcmp(bytes.data(), kMagic.data(), 4) != 0)
    raise(ErrorKind::Format, "bad frame magic");
  if (bytes[4] != kVersion)
    raise(ErrorKind::Format,
          "unsupported frame version " + std::to_string(bytes[4]));
  if (bytes[5] > 1)
    raise(ErrorKind::Format, "unknown codec id " + std::to_string(bytes[5]));

  EncodedFrame f;
  f.codec_id = static_cast<CodecId>(bytes[5]);
  f.lattice_bits = bytes[6];
  f.profile_id = bytes[7];
  f.point_count = get_u32(bytes, 8);
  for (int i = 0; i < 6; ++i) f.bbox[i] = get_f32(bytes, 12 + 4 * static_cast<size_t>(i));
  uint32_t payload_len = get_u32(bytes, 36);

  size_t ext = extension_size(f.codec_id);
  if (bytes.size() < kFixedHeaderSize + ext)
    raise(ErrorKind::Format, "frame truncated inside codec extension");
  if (f.codec_id == CodecId::KdTree)
    f.compression_level = bytes[kFixedHeaderSize];
  else
    f.scale = get_f32(bytes, kFixedHeaderSize);

  size_t body = kFixedHeaderSize + ext;
  if (bytes.size() < body + payload_len)
    raise(ErrorKind::Corruption, "frame payload underrun");
  if (bytes.size() > body + payload_len)
    raise(ErrorKind::Format, "trailing bytes after frame payload");
  f.payload.assign(bytes.begin() + static_cast<ptrdiff_t>(body), bytes.end());
  return f;
}

} // namespace hsc
