// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#include "hsc/octree_codec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "hsc/entropy.hpp"
#include "hsc/error.hpp"

namespace hsc {

namespace {

// 21 bits per axis fit a 63-bit Morton code.
constexpr int kMaxOctreeDepth = 21;

float round_down_f32(double v) {
  float f = static_cast<float>(v);
  if (static_cast<double>(f) > v)
    f = std::nextafter(f, -std::numeric_limits<float>::infinity());
  return f;
}

float round_up_f32(double v) {
  float f = static_cast<float>(v);
  if (static_cast<double>(f) < v)
    f = std::nextafter(f, std::numeric_limits<float>::infinity());
  return f;
}

uint64_t morton_encode(const std::array<uint32_t, 3>& v) {
  uint64_t m = 0;
  for (int i = 0; i < kMaxOctreeDepth; ++i) {
    m |= static_cast<uint64_t>((v[0] >> i) & 1u) << (3 * i + 2);
    m |= static_cast<uint64_t>((v[1] >> i) & 1u) << (3 * i + 1);
    m |= static_cast<uint64_t>((v[2] >> i) & 1u) << (3 * i);
  }
  return m;
}

std::array<uint32_t, 3> morton_decode(uint64_t m) {
  std::array<uint32_t, 3> v{0, 0, 0};
  for (int i = 0; i < kMaxOctreeDepth; ++i) {
    v[0] |= static_cast<uint32_t>((m >> (3 * i + 2)) & 1u) << i;
    v[1] |= static_cast<uint32_t>((m >> (3 * i + 1)) & 1u) << i;
    v[2] |= static_cast<uint32_t>((m >> (3 * i)) & 1u) << i;
  }
  return v;
}

} // namespace

Vec3 VoxelizationParams::voxel_position(const std::array<uint32_t, 3>& voxel) const {
  Vec3 p;
  for (int a = 0; a < 3; ++a)
    p[a] = translation[a] + static_cast<double>(voxel[static_cast<size_t>(a)]) / scale;
  return p;
}

VoxelizedCloud voxelize(const PointCloud& cloud, double scale) {
  if (cloud.empty())
    raise(ErrorKind::EmptyInput, "voxelize: empty cloud");
  if (!(scale > 0.0) || !std::isfinite(scale))
    raise(ErrorKind::InvalidParameter, "voxelize: scale must be positive");

  BoundingBox box = bounding_box(cloud);
  VoxelizedCloud vc;
  vc.params.scale = static_cast<double>(static_cast<float>(scale));
  for (int a = 0; a < 3; ++a) {
    vc.params.lattice_bbox[static_cast<size_t>(a)] = round_down_f32(box.min[a]);
    vc.params.lattice_bbox[static_cast<size_t>(a) + 3] = round_up_f32(box.max[a]);
    vc.params.translation[a] = vc.params.lattice_bbox[static_cast<size_t>(a)];
  }

  const double s = vc.params.scale;
  std::vector<uint64_t> mortons(cloud.size());
  uint32_t max_coord = 0;
  const ptrdiff_t n = static_cast<ptrdiff_t>(cloud.size());
#pragma omp parallel for schedule(static) reduction(max : max_coord)
  for (ptrdiff_t i = 0; i < n; ++i) {
    const Vec3& p = cloud.points[static_cast<size_t>(i)];
    std::array<uint32_t, 3> v;
    for (int a = 0; a < 3; ++a) {
      double t = std::round((p[a] - vc.params.translation[a]) * s);
      if (t >= static_cast<double>(1u << kMaxOctreeDepth))
        t = static_cast<double>((1u << kMaxOctreeDepth) - 1);
      v[static_cast<size_t>(a)] = static_cast<uint32_t>(std::max(t, 0.0));
      max_coord = std::max(max_coord, v[static_cast<size_t>(a)]);
    }
    mortons[static_cast<size_t>(i)] = morton_encode(v);
  }

  double raw_max = 0.0;
  for (int a = 0; a < 3; ++a)
    raw_max = std::max(raw_max, std::round((box.max[a] - vc.params.translation[a]) * s));
  if (raw_max >= static_cast<double>(1u << kMaxOctreeDepth))
    raise(ErrorKind::InvalidParameter,
          "voxelize: scale produces coordinates beyond 2^21; lower the scale");

  std::sort(mortons.begin(), mortons.end());
  mortons.erase(std::unique(mortons.begin(), mortons.end()), mortons.end());
  vc.duplicate_count = cloud.size() - mortons.size();
  vc.params.depth = std::bit_width(max_coord);

  vc.voxels.resize(mortons.size());
  for (size_t i = 0; i < mortons.size(); ++i) vc.voxels[i] = morton_decode(mortons[i]);
  return vc;
}

EncodedFrame encode_octree(const VoxelizedCloud& vc, uint8_t profile_id) {
  if (vc.voxels.empty())
    raise(ErrorKind::EmptyInput, "encode_octree: empty voxel set");
  if (vc.voxels.size() > std::numeric_limits<uint32_t>::max())
    raise(ErrorKind::InvalidParameter, "encode_octree: voxel count exceeds u32");

  const int d = vc.params.depth;
  std::vector<uint64_t> mortons(vc.voxels.size());
  for (size_t i = 0; i < vc.voxels.size(); ++i) mortons[i] = morton_encode(vc.voxels[i]);
  if (!std::is_sorted(mortons.begin(), mortons.end()))
    std::sort(mortons.begin(), mortons.end());

  // Occupied nodes never produce occupancy byte 0, so the alphabet is 255
  // symbols (byte - 1) in a single adaptive context.
  AdaptiveModel model;
  uint32_t ctx = model.add_context(255);
  RangeEncoder enc;

  struct NodeRange {
    size_t begin;
    size_t end;
  };
  std::vector<NodeRange> level{{0, mortons.size()}};
  for (int l = 0; l < d; ++l) {
    const int child_shift = 3 * (d - l - 1);
    std::vector<NodeRange> next;
    next.reserve(level.size() * 2);
    for (const NodeRange& node : level) {
      uint32_t occupancy = 0;
      size_t i = node.begin;
      while (i < node.end) {
        uint32_t child = static_cast<uint32_t>((mortons[i] >> child_shift) & 7u);
        occupancy |= 1u << child;
        size_t j = i;
        while (j < node.end &&
               static_cast<uint32_t>((mortons[j] >> child_shift) & 7u) == child)
          ++j;
        next.push_back({i, j});
        i = j;
      }
      model.encode_symbol(enc, ctx, occupancy - 1);
    }
    level = std::move(next);
  }

  EncodedFrame frame;
  frame.codec_id = CodecId::Octree;
  frame.lattice_bits = static_cast<uint8_t>(d);
  frame.profile_id = profile_id;
  frame.point_count = static_cast<uint32_t>(vc.voxels.size());
  frame.bbox = vc.params.lattice_bbox;
  frame.scale = static_cast<float>(vc.params.scale);
  frame.payload = enc.finish();
  return frame;
}

EncodedFrame encode_octree(const PointCloud& cloud, double scale, uint8_t profile_id) {
  return encode_octree(voxelize(cloud, scale), profile_id);
}

PointCloud decode_octree(const EncodedFrame& frame) {
  if (frame.codec_id != CodecId::Octree)
    raise(ErrorKind::Format, "decode_octree: frame holds a different codec");
  if (frame.lattice_bits > kMaxOctreeDepth)
    raise(ErrorKind::Format, "decode_octree: invalid octree depth");
  if (!(frame.scale > 0.0f) || !std::isfinite(frame.scale))
    raise(ErrorKind::Format, "decode_octree: invalid voxel scale");

  const int d = frame.lattice_bits;
  const uint32_t expected = frame.point_count;

  VoxelizationParams params;
  params.scale = static_cast<double>(frame.scale);
  params.depth = d;
  params.lattice_bbox = frame.bbox;
  for (int a = 0; a < 3; ++a)
    params.translation[a] = frame.bbox[static_cast<size_t>(a)];

  std::vector<uint64_t> level{0};
  if (d > 0) {
    try {
      AdaptiveModel model;
      uint32_t ctx = model.add_context(255);
      RangeDecoder dec(frame.payload);
      for (int l = 0; l < d; ++l) {
        std::vector<uint64_t> next;
        next.reserve(level.size() * 2);
        for (uint64_t prefix : level) {
          uint32_t occupancy = model.decode_symbol(dec, ctx) + 1;
          for (uint32_t child = 0; child < 8; ++child)
            if (occupancy & (1u << child)) next.push_back((prefix << 3) | child);
        }
        if (next.size() > expected)
          raise(ErrorKind::Corruption, "octree stream grew beyond header point count");
        level = std::move(next);
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::DecodeUnderrun)
        raise(ErrorKind::Corruption,
              std::string("frame payload underrun: ") + e.what());
      throw;
    }
  }

  if (level.size() != expected)
    raise(ErrorKind::Corruption, "octree leaf count does not match header");

  PointCloud out;
  out.points.resize(level.size());
  for (size_t i = 0; i < level.size(); ++i)
    out.points[i] = params.voxel_position(morton_decode(level[i]));
  return out;
}

} // namespace hsc
