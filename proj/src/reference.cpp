// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#include "hsc/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hsc/error.hpp"

namespace hsc::reference {

namespace {

double nn_sq_dist(const PointCloud& cloud, const Vec3& query, ptrdiff_t exclude) {
  double best = std::numeric_limits<double>::infinity();
  for (size_t j = 0; j < cloud.size(); ++j) {
    if (static_cast<ptrdiff_t>(j) == exclude) continue;
    best = std::min(best, squared_distance(cloud.points[j], query));
  }
  return best;
}

} // namespace

size_t nearest_brute(const PointCloud& cloud, const Vec3& query, ptrdiff_t exclude) {
  double best = std::numeric_limits<double>::infinity();
  size_t best_idx = 0;
  for (size_t j = 0; j < cloud.size(); ++j) {
    if (static_cast<ptrdiff_t>(j) == exclude) continue;
    double d = squared_distance(cloud.points[j], query);
    if (d < best) {
      best = d;
      best_idx = j;
    }
  }
  return best_idx;
}

double chamfer_sym(const PointCloud& p, const PointCloud& p_hat) {
  if (p.empty() || p_hat.empty())
    raise(ErrorKind::EmptyInput, "reference::chamfer_sym: empty cloud");
  double sum = 0.0;
  for (const Vec3& q : p.points) sum += nn_sq_dist(p_hat, q, -1);
  for (const Vec3& q : p_hat.points) sum += nn_sq_dist(p, q, -1);
  return sum;
}

double intrinsic_peak(const PointCloud& p) {
  if (p.size() < 2)
    raise(ErrorKind::InsufficientPoints,
          "reference::intrinsic_peak: need at least 2 points");
  double peak = 0.0;
  for (size_t i = 0; i < p.size(); ++i)
    peak = std::max(peak, nn_sq_dist(p, p.points[i], static_cast<ptrdiff_t>(i)));
  return std::sqrt(peak);
}

NormalField estimate_normals(const PointCloud& p, int k) {
  if (k < 3)
    raise(ErrorKind::InvalidParameter, "reference::estimate_normals: k must be >= 3");
  if (p.size() < static_cast<size_t>(k))
    raise(ErrorKind::InsufficientPoints,
          "reference::estimate_normals: cloud smaller than k");

  NormalField field;
  field.normals.resize(p.size());
  field.degenerate.assign(p.size(), 0);

  std::vector<std::pair<double, size_t>> dist(p.size());
  for (size_t i = 0; i < p.size(); ++i) {
    for (size_t j = 0; j < p.size(); ++j)
      dist[j] = {squared_distance(p.points[i], p.points[j]), j};
    std::partial_sort(dist.begin(), dist.begin() + k, dist.end());

    Vec3 mean{0, 0, 0};
    for (int t = 0; t < k; ++t) mean = mean + p.points[dist[static_cast<size_t>(t)].second];
    mean = mean * (1.0 / k);
    double xx = 0, xy = 0, xz = 0, yy = 0, yz = 0, zz = 0;
    for (int t = 0; t < k; ++t) {
      Vec3 d = p.points[dist[static_cast<size_t>(t)].second] - mean;
      xx += d.x * d.x;
      xy += d.x * d.y;
      xz += d.x * d.z;
      yy += d.y * d.y;
      yz += d.y * d.z;
      zz += d.z * d.z;
    }
    EigenDecomposition3 eig = eigen_symmetric_3x3({xx, xy, xz, yy, yz, zz});
    field.normals[i] = eig.vectors[0];
    double scale = std::max(eig.values[2], 0.0);
    if (eig.values[1] <= 1e-12 * scale || scale <= 0.0) field.degenerate[i] = 1;
  }
  return field;
}

double mse_point_to_plane(const PointCloud& p, const PointCloud& p_hat,
                          const NormalField& normals) {
  if (p.empty() || p_hat.empty())
    raise(ErrorKind::EmptyInput, "reference::mse_point_to_plane: empty cloud");
  if (normals.size() != p_hat.size())
    raise(ErrorKind::ContractViolation,
          "reference::mse_point_to_plane: normals not indexed by reconstruction");
  double sum = 0.0;
  for (const Vec3& q : p.points) {
    size_t j = nearest_brute(p_hat, q, -1);
    double proj = dot(q - p_hat.points[j], normals.normals[j]);
    sum += proj * proj;
  }
  return sum / static_cast<double>(p.size());
}

} // namespace hsc::reference
