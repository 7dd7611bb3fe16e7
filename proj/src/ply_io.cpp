// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#include "hsc/ply_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <string>

namespace hsc {

std::vector<uint8_t> export_ply(const PointCloud& cloud) {
  cloud.check_channels();
  std::string out;
  out.reserve(64 + cloud.size() * 48);
  out += "ply\nformat ascii 1.0\ncomment exported by hsc\n";
  out += "element vertex " + std::to_string(cloud.size()) + "\n";
  out += "property float x\nproperty float y\nproperty float z\n";
  if (cloud.has_reflectance()) out += "property float reflectance\n";
  if (cloud.has_labels()) out += "property ushort class\n";
  out += "end_header\n";

  char line[160];
  for (size_t i = 0; i < cloud.size(); ++i) {
    const Vec3& p = cloud.points[i];
    int len = std::snprintf(line, sizeof line, "%.9g %.9g %.9g", p.x, p.y, p.z);
    out.append(line, static_cast<size_t>(len));
    if (cloud.has_reflectance()) {
      len = std::snprintf(line, sizeof line, " %.9g",
                          static_cast<double>(cloud.reflectance[i]));
      out.append(line, static_cast<size_t>(len));
    }
    if (cloud.has_labels()) {
      len = std::snprintf(line, sizeof line, " %u",
                          static_cast<unsigned>(cloud.labels[i].class_id));
      out.append(line, static_cast<size_t>(len));
    }
    out += '\n';
  }
  return {out.begin(), out.end()};
}

} // namespace hsc
