// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HSC_SPATIAL_INDEX_HPP
#define HSC_SPATIAL_INDEX_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "hsc/geometry.hpp"

namespace hsc {

/// Balanced kd-tree over a fixed point set. Queries are exact under the
/// Euclidean metric and read-only, so they may run concurrently.
class SpatialIndex {
public:
  struct Hit {
    size_t index = 0;
    double sq_dist = std::numeric_limits<double>::infinity();
  };

  explicit SpatialIndex(std::span<const Vec3> points);

  size_t size() const { return points_.size(); }

  /// Nearest point to `query`; `exclude` skips one source index (used for
  /// self-queries). Requires at least one eligible point.
  Hit nearest(const Vec3& query,
              std::optional<size_t> exclude = std::nullopt) const;

  /// Indices of the k nearest points (self included when querying a source
  /// point), in increasing distance order. Requires k <= size().
  void k_nearest(const Vec3& query, size_t k, std::vector<size_t>& out) const;

private:
  struct Node {
    int axis = -1;        // -1 marks a leaf
    double split = 0.0;
    uint32_t left = 0;    // child node ids, or [begin,end) for leaves
    uint32_t right = 0;
  };

  uint32_t build(uint32_t begin, uint32_t end);
  void nearest_walk(uint32_t node, const Vec3& query,
                    std::optional<size_t> exclude, Hit& best) const;
  void k_walk(uint32_t node, const Vec3& query, size_t k,
              std::vector<std::pair<double, size_t>>& heap) const;

  std::vector<Vec3> points_;   // original order
  std::vector<uint32_t> ids_;  // permutation grouped by leaf
  std::vector<Node> nodes_;
  uint32_t root_ = 0;

  static constexpr uint32_t kLeafSize = 16;
};

} // namespace hsc

#endif
