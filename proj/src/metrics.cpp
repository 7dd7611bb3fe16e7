// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#include "hsc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hsc/error.hpp"
#include "hsc/spatial_index.hpp"

namespace hsc {

namespace {

// Cyclic Jacobi sweeps; a handful suffice for 3x3 to double precision.
EigenDecomposition3 jacobi3(double a00, double a01, double a02, double a11,
                            double a12, double a22) {
  double a[3][3] = {{a00, a01, a02}, {a01, a11, a12}, {a02, a12, a22}};
  double v[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

  for (int sweep = 0; sweep < 32; ++sweep) {
    double off = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
    if (off < 1e-30 * (a[0][0] * a[0][0] + a[1][1] * a[1][1] + a[2][2] * a[2][2] + 1e-300))
      break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        if (a[p][q] == 0.0) continue;
        double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int r = 0; r < 3; ++r) {
          double arp = a[r][p], arq = a[r][q];
          a[r][p] = c * arp - s * arq;
          a[r][q] = s * arp + c * arq;
        }
        for (int r = 0; r < 3; ++r) {
          double apr = a[p][r], aqr = a[q][r];
          a[p][r] = c * apr - s * aqr;
          a[q][r] = s * apr + c * aqr;
        }
        for (int r = 0; r < 3; ++r) {
          double vrp = v[r][p], vrq = v[r][q];
          v[r][p] = c * vrp - s * vrq;
          v[r][q] = s * vrp + c * vrq;
        }
      }
    }
  }

  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return a[x][x] < a[y][y]; });
  EigenDecomposition3 out;
  for (int i = 0; i < 3; ++i) {
    int col = order[static_cast<size_t>(i)];
    out.values[static_cast<size_t>(i)] = a[col][col];
    out.vectors[static_cast<size_t>(i)] = {v[0][col], v[1][col], v[2][col]};
    double len = norm(out.vectors[static_cast<size_t>(i)]);
    if (len > 0.0) out.vectors[static_cast<size_t>(i)] = out.vectors[static_cast<size_t>(i)] * (1.0 / len);
  }
  return out;
}

// Directional sum of squared NN distances, parallel per query point with a
// deterministic serial reduction.
double nn_sq_sum(const PointCloud& from, const SpatialIndex& to_index) {
  std::vector<double> d2(from.size());
  const ptrdiff_t n = static_cast<ptrdiff_t>(from.size());
#pragma omp parallel for schedule(static)
  for (ptrdiff_t i = 0; i < n; ++i)
    d2[static_cast<size_t>(i)] =
        to_index.nearest(from.points[static_cast<size_t>(i)]).sq_dist;
  return std::accumulate(d2.begin(), d2.end(), 0.0);
}

void require_non_empty(const PointCloud& p, const char* what) {
  if (p.empty()) raise(ErrorKind::EmptyInput, std::string(what) + ": empty cloud");
}

} // namespace

EigenDecomposition3 eigen_symmetric_3x3(const std::array<double, 6>& m) {
  return jacobi3(m[0], m[1], m[2], m[3], m[4], m[5]);
}

double chamfer_sym(const PointCloud& p, const PointCloud& p_hat) {
  require_non_empty(p, "chamfer_sym");
  require_non_empty(p_hat, "chamfer_sym");
  SpatialIndex idx_p(p.points);
  SpatialIndex idx_hat(p_hat.points);
  return nn_sq_sum(p, idx_hat) + nn_sq_sum(p_hat, idx_p);
}

double chamfer_sym_normalized(const PointCloud& p, const PointCloud& p_hat) {
  require_non_empty(p, "chamfer_sym_normalized");
  require_non_empty(p_hat, "chamfer_sym_normalized");
  SpatialIndex idx_p(p.points);
  SpatialIndex idx_hat(p_hat.points);
  return nn_sq_sum(p, idx_hat) / static_cast<double>(p.size()) +
         nn_sq_sum(p_hat, idx_p) / static_cast<double>(p_hat.size());
}

double intrinsic_peak(const PointCloud& p) {
  if (p.size() < 2)
    raise(ErrorKind::InsufficientPoints, "intrinsic_peak: need at least 2 points");
  SpatialIndex index(p.points);
  double peak = 0.0;
  const ptrdiff_t n = static_cast<ptrdiff_t>(p.size());
#pragma omp parallel for schedule(static) reduction(max : peak)
  for (ptrdiff_t i = 0; i < n; ++i) {
    double d2 = index.nearest(p.points[static_cast<size_t>(i)],
                              static_cast<size_t>(i)).sq_dist;
    peak = std::max(peak, d2);
  }
  return std::sqrt(peak);
}

NormalField estimate_normals(const PointCloud& p, int k) {
  if (k < 3)
    raise(ErrorKind::InvalidParameter, "estimate_normals: k must be >= 3");
  if (p.size() < static_cast<size_t>(k))
    raise(ErrorKind::InsufficientPoints,
          "estimate_normals: cloud smaller than k");

  SpatialIndex index(p.points);
  NormalField field;
  field.normals.resize(p.size());
  field.degenerate.assign(p.size(), 0);

  const ptrdiff_t n = static_cast<ptrdiff_t>(p.size());
#pragma omp parallel
  {
    std::vector<size_t> nb;
#pragma omp for schedule(static)
    for (ptrdiff_t i = 0; i < n; ++i) {
      index.k_nearest(p.points[static_cast<size_t>(i)], static_cast<size_t>(k), nb);
      Vec3 mean{0, 0, 0};
      for (size_t j : nb) mean = mean + p.points[j];
      mean = mean * (1.0 / static_cast<double>(nb.size()));
      double xx = 0, xy = 0, xz = 0, yy = 0, yz = 0, zz = 0;
      for (size_t j : nb) {
        Vec3 d = p.points[j] - mean;
        xx += d.x * d.x;
        xy += d.x * d.y;
        xz += d.x * d.z;
        yy += d.y * d.y;
        yz += d.y * d.z;
        zz += d.z * d.z;
      }
      EigenDecomposition3 eig = eigen_symmetric_3x3({xx, xy, xz, yy, yz, zz});
      field.normals[static_cast<size_t>(i)] = eig.vectors[0];
      // No unique smallest direction: collinear (two near-zero eigenvalues)
      // or fully coincident neighborhoods.
      double scale = std::max(eig.values[2], 0.0);
      if (eig.values[1] <= 1e-12 * scale || scale <= 0.0)
        field.degenerate[static_cast<size_t>(i)] = 1;
    }
  }
  return field;
}

double mse_point_to_plane(const PointCloud& p, const PointCloud& p_hat,
                          const NormalField& normals) {
  require_non_empty(p, "mse_point_to_plane");
  require_non_empty(p_hat, "mse_point_to_plane");
  if (normals.size() != p_hat.size())
    raise(ErrorKind::ContractViolation,
          "mse_point_to_plane: normals not indexed by reconstruction");

  SpatialIndex index(p_hat.points);
  std::vector<double> term(p.size());
  const ptrdiff_t n = static_cast<ptrdiff_t>(p.size());
#pragma omp parallel for schedule(static)
  for (ptrdiff_t i = 0; i < n; ++i) {
    const Vec3& q = p.points[static_cast<size_t>(i)];
    SpatialIndex::Hit hit = index.nearest(q);
    double proj = dot(q - p_hat.points[hit.index], normals.normals[hit.index]);
    term[static_cast<size_t>(i)] = proj * proj;
  }
  return std::accumulate(term.begin(), term.end(), 0.0) /
         static_cast<double>(p.size());
}

std::optional<double> SymmetricPsnr::db() const {
  if (forward.db && backward.db) return std::min(*forward.db, *backward.db);
  if (forward.db) return forward.db;
  return backward.db;
}

DirectionalPsnr psnr_directional(const PointCloud& reference,
                                 const PointCloud& other, int k) {
  if (reference.size() < 2 || other.size() < 2)
    raise(ErrorKind::InsufficientPoints, "psnr: clouds need at least 2 points");
  DirectionalPsnr out;
  out.peak = intrinsic_peak(reference);
  int k_eff = std::max(3, std::min<int>(k, static_cast<int>(other.size())));
  NormalField normals = estimate_normals(other, k_eff);
  out.mse = mse_point_to_plane(reference, other, normals);
  if (out.mse > 0.0)
    out.db = 10.0 * std::log10(out.peak * out.peak / out.mse);
  return out;
}

SymmetricPsnr psnr_sym(const PointCloud& p, const PointCloud& p_hat, int k) {
  SymmetricPsnr out;
  out.forward = psnr_directional(p, p_hat, k);
  out.backward = psnr_directional(p_hat, p, k);
  return out;
}

double bpp(uint64_t compressed_bytes, uint64_t compressed_point_count) {
  if (compressed_point_count == 0)
    raise(ErrorKind::DomainError, "bpp: zero point count");
  return 8.0 * static_cast<double>(compressed_bytes) /
         static_cast<double>(compressed_point_count);
}

double compression_ratio(uint64_t raw_bytes, uint64_t compressed_bytes) {
  if (compressed_bytes == 0)
    raise(ErrorKind::DomainError, "compression_ratio: zero compressed size");
  return static_cast<double>(raw_bytes) / static_cast<double>(compressed_bytes);
}

double required_bitrate_mbps(uint64_t frame_bytes, double frame_interval_s) {
  if (!(frame_interval_s > 0.0))
    raise(ErrorKind::DomainError, "required_bitrate: interval must be positive");
  return 8.0 * static_cast<double>(frame_bytes) / frame_interval_s / 1e6;
}

} // namespace hsc
