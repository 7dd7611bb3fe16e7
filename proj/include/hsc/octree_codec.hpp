// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HSC_OCTREE_CODEC_HPP
#define HSC_OCTREE_CODEC_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "hsc/frame.hpp"
#include "hsc/point_cloud.hpp"

namespace hsc {

/// Voxel lattice for the octree baseline: integer coordinates are
/// round((x - translation) * scale); depth d = ceil(log2(max_coord + 1))
/// puts every voxel inside the cube [0, 2^d)^3.
struct VoxelizationParams {
  double scale = 1.0;  // cells per meter, stored at f32 precision
  Vec3 translation;    // lattice origin (f32 mins of the cloud box)
  int depth = 0;
  std::array<float, 6> lattice_bbox{};

  Vec3 voxel_position(const std::array<uint32_t, 3>& voxel) const;
};

struct VoxelizedCloud {
  std::vector<std::array<uint32_t, 3>> voxels; // distinct, sorted in coding order
  VoxelizationParams params;
  uint64_t duplicate_count = 0; // input points minus distinct voxels
};

/// Quantizes coordinates to nearest integers on the scaled lattice and
/// merges duplicate voxels, reporting how many points collapsed.
VoxelizedCloud voxelize(const PointCloud& cloud, double scale);

/// Breadth-first occupancy-byte octree over the voxel set, entropy-coded.
EncodedFrame encode_octree(const VoxelizedCloud& vc,
                           uint8_t profile_id = kProfileHsc0);

EncodedFrame encode_octree(const PointCloud& cloud, double scale,
                           uint8_t profile_id = kProfileHsc0);

/// Voxel positions mapped back through the inverse translation and scale.
/// Cardinality equals the number of distinct occupied voxels.
PointCloud decode_octree(const EncodedFrame& frame);

} // namespace hsc

#endif
