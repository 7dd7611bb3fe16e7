// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HSC_TEST_HELPERS_HPP
#define HSC_TEST_HELPERS_HPP

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hsc/point_cloud.hpp"

namespace hsc::test {

class Rand {
public:
  explicit Rand(uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  uint64_t integer(uint64_t n) { return gen_() % n; }

  std::mt19937_64& gen() { return gen_; }

private:
  std::mt19937_64 gen_;
};

inline PointCloud random_cloud(size_t n, uint64_t seed, double extent = 100.0) {
  Rand rng(seed);
  PointCloud cloud;
  cloud.points.reserve(n);
  for (size_t i = 0; i < n; ++i)
    cloud.points.push_back({rng.uniform(-extent, extent), rng.uniform(-extent, extent),
                            rng.uniform(-extent, extent)});
  return cloud;
}

/// Regular grid on z = plane_z, unit spacing, side x side points.
inline PointCloud plane_grid(int side, double plane_z, double spacing = 1.0) {
  PointCloud cloud;
  cloud.points.reserve(static_cast<size_t>(side) * static_cast<size_t>(side));
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j)
      cloud.points.push_back({i * spacing, j * spacing, plane_z});
  return cloud;
}

inline std::vector<Vec3> sorted_points(const PointCloud& cloud) {
  std::vector<Vec3> pts = cloud.points;
  std::sort(pts.begin(), pts.end(), [](const Vec3& a, const Vec3& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.z < b.z;
  });
  return pts;
}

/// Minimal ASCII PLY reader for round-trip checks; independent of the
/// exporter's formatting.
struct ParsedPly {
  size_t vertex_count = 0;
  std::vector<std::string> properties;
  std::vector<std::vector<double>> rows;
};

inline ParsedPly parse_ply(const std::vector<uint8_t>& bytes) {
  std::istringstream in(std::string(bytes.begin(), bytes.end()));
  ParsedPly ply;
  std::string line;
  bool header_done = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (tok == "element") {
      std::string kind;
      ls >> kind >> ply.vertex_count;
    } else if (tok == "property") {
      std::string type, name;
      ls >> type >> name;
      ply.properties.push_back(name);
    } else if (tok == "end_header") {
      header_done = true;
      break;
    }
  }
  if (!header_done) return ply;
  for (size_t i = 0; i < ply.vertex_count && std::getline(in, line); ++i) {
    std::istringstream ls(line);
    std::vector<double> row;
    double v;
    while (ls >> v) row.push_back(v);
    ply.rows.push_back(std::move(row));
  }
  return ply;
}

} // namespace hsc::test

#endif
