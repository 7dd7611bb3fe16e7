// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HSC_POINT_CLOUD_HPP
#define HSC_POINT_CLOUD_HPP

#include <cstdint>
#include <vector>

#include "hsc/error.hpp"
#include "hsc/geometry.hpp"

namespace hsc {

/// Semantic KITTI label word: class id in the low 16 bits, instance id in
/// the high 16 bits.
struct SemanticLabel {
  uint16_t class_id = 0;
  uint16_t instance_id = 0;

  static SemanticLabel unpack(uint32_t word) {
    return {static_cast<uint16_t>(word & 0xFFFFu),
            static_cast<uint16_t>(word >> 16)};
  }
  uint32_t pack() const {
    return static_cast<uint32_t>(class_id) |
           (static_cast<uint32_t>(instance_id) << 16);
  }

  bool operator==(const SemanticLabel&) const = default;
};

/// Ordered point set with optional reflectance and semantic label channels.
/// Channels are either empty or exactly `size()` long.
class PointCloud {
public:
  std::vector<Vec3> points;
  std::vector<float> reflectance;
  std::vector<SemanticLabel> labels;

  size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  bool has_reflectance() const { return !reflectance.empty(); }
  bool has_labels() const { return !labels.empty(); }

  void reserve(size_t n) { points.reserve(n); }

  void check_channels() const {
    if (has_reflectance() && reflectance.size() != points.size())
      raise(ErrorKind::Internal, "reflectance channel length mismatch");
    if (has_labels() && labels.size() != points.size())
      raise(ErrorKind::Internal, "label channel length mismatch");
  }
};

/// Component-wise min/max over all points. Exact: no padding.
BoundingBox bounding_box(const PointCloud& cloud);

} // namespace hsc

#endif
