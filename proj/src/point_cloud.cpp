// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#include "hsc/point_cloud.hpp"

#include <algorithm>

namespace hsc {

BoundingBox bounding_box(const PointCloud& cloud) {
  if (cloud.empty())
    raise(ErrorKind::EmptyInput, "bounding_box: empty cloud");
  BoundingBox box{cloud.points[0], cloud.points[0]};
  for (const Vec3& p : cloud.points) {
    for (int a = 0; a < 3; ++a) {
      box.min[a] = std::min(box.min[a], p[a]);
      box.max[a] = std::max(box.max[a], p[a]);
    }
  }
  return box;
}

} // namespace hsc
