// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HSC_GEOMETRY_HPP
#define HSC_GEOMETRY_HPP

#include <array>
#include <cmath>

namespace hsc {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double& operator[](int axis) { return axis == 0 ? x : (axis == 1 ? y : z); }
  double operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }

  bool operator==(const Vec3& o) const = default;
};

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double squared_norm(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline double squared_distance(const Vec3& a, const Vec3& b) {
  return squared_norm(a - b);
}

/// Axis-aligned box, tight over the cloud it was computed from.
struct BoundingBox {
  Vec3 min;
  Vec3 max;

  double extent(int axis) const { return max[axis] - min[axis]; }
  bool contains(const Vec3& p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y &&
           p.z >= min.z && p.z <= max.z;
  }
};

} // namespace hsc

#endif
