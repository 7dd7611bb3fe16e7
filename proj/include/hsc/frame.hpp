// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HSC_FRAME_HPP
#define HSC_FRAME_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace hsc {

enum class CodecId : uint8_t {
  KdTree = 0,
  Octree = 1,
};

/// Profile ids recorded in frame headers.
inline constexpr uint8_t kProfileHsc0 = 0;
inline constexpr uint8_t kProfileHsc1 = 1;
inline constexpr uint8_t kProfileHsc2 = 2;
inline constexpr uint8_t kProfileCustom = 255;

/// Self-describing compressed frame (`.hscf`). Layout, all little-endian:
///
///   offset  size  field
///   0       4     magic "HSCF"
///   4       1     version (1)
///   5       1     codec id (0 = kd-tree, 1 = octree)
///   6       1     lattice bits: quantization level q (kd) or cube depth d (octree)
///   7       1     profile id
///   8       4     point count (u32)
///   12      24    lattice bounding box, min xyz then max xyz (6 x f32)
///   36      4     payload length (u32)
///   40      ...   codec extension: kd -> 1 byte compression level,
///                 octree -> 4 bytes f32 voxel scale (cells per meter)
///   ...     ...   entropy-coded payload
///
/// Decoding needs no side information beyond these bytes.
struct EncodedFrame {
  static constexpr std::array<uint8_t, 4> kMagic = {'H', 'S', 'C', 'F'};
  static constexpr uint8_t kVersion = 1;

  CodecId codec_id = CodecId::KdTree;
  uint8_t lattice_bits = 0;
  uint8_t profile_id = kProfileHsc0;
  uint32_t point_count = 0;
  std::array<float, 6> bbox{}; // min x,y,z then max x,y,z
  uint8_t compression_level = 0; // kd frames only
  float scale = 0.0f;            // octree frames only
  std::vector<uint8_t> payload;

  size_t serialized_size() const;
  std::vector<uint8_t> serialize() const;

  /// Parses and validates a frame; the byte span must hold exactly one frame.
  static EncodedFrame parse(std::span<const uint8_t> bytes);

  bool operator==(const EncodedFrame&) const = default;
};

} // namespace hsc

#endif
