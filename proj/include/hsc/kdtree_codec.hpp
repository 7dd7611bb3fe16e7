// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HSC_KDTREE_CODEC_HPP
#define HSC_KDTREE_CODEC_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "hsc/frame.hpp"
#include "hsc/point_cloud.hpp"

namespace hsc {

inline constexpr int kMaxQuantizationLevel = 14;
inline constexpr int kMaxCompressionLevel = 10;

/// Uniform voxel lattice over an axis-aligned box: 2^q cells per axis.
/// The lattice box is the cloud's bounding box rounded outward to f32 so
/// that the frame header describes the exact lattice the coder used; a
/// zero-extent axis collapses to a single cell and reconstructs to the
/// lattice origin.
struct QuantizationParams {
  int q = 0;
  std::array<float, 6> lattice_bbox{}; // min xyz, max xyz
  Vec3 origin;                         // lattice_bbox mins
  Vec3 step;                           // extent / 2^q; 0 on degenerate axes
  std::array<uint32_t, 3> cells{1, 1, 1};

  static QuantizationParams from_cloud(const PointCloud& cloud, int q);
  static QuantizationParams from_bbox(const std::array<float, 6>& bbox_f32, int q);

  bool degenerate(int axis) const { return step[axis] == 0.0; }

  /// Center of a lattice cell; per-axis reconstruction error <= step/2.
  Vec3 cell_center(const std::array<uint32_t, 3>& cell) const;
};

struct QuantizedCloud {
  std::vector<std::array<uint32_t, 3>> cells; // one entry per input point
  QuantizationParams params;

  size_t size() const { return cells.size(); }
};

/// Maps every point to its lattice cell index, clamped to [0, 2^q).
/// Multiplicity is preserved: |result| == |cloud|.
QuantizedCloud quantize(const PointCloud& cloud, int q);

/// Cell centers of a quantized cloud, in order.
PointCloud dequantize(const QuantizedCloud& qc);

/// Count code for one split: value = floor(n/2) - min(n_low, n_high).
/// Balanced-or-not is not always recoverable from the value alone, so the
/// side flag is present whenever the two halves differ and names the half
/// with fewer points.
struct SplitCode {
  uint32_t value = 0;
  std::optional<bool> low_is_smaller; // nullopt iff n_low == n_high
};

SplitCode split_code(uint64_t n_total, uint64_t n_low);

/// Inverse of split_code; recovers n_low.
uint64_t split_decode(uint64_t n_total, uint32_t value,
                      std::optional<bool> low_is_smaller);

/// Bits needed for a split value: ceil(log2(floor(n/2)+1)).
int split_value_bits(uint64_t n_total);

/// Encodes a quantized cloud: recursive center splits on alternating axes,
/// split counts entropy-coded. compression_level in [0,10] selects entropy
/// context richness (0 = one shared context; higher levels key contexts by
/// value bit position, then node depth, then parent-count magnitude).
EncodedFrame encode_kdtree(const QuantizedCloud& qc, int compression_level,
                           uint8_t profile_id = kProfileHsc0);

EncodedFrame encode_kdtree(const PointCloud& cloud, int q, int compression_level,
                           uint8_t profile_id = kProfileHsc0);

/// Exact multiset of cell centers recorded at encode time.
PointCloud decode_kdtree(const EncodedFrame& frame);

} // namespace hsc

#endif
