// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HSC_METRICS_HPP
#define HSC_METRICS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "hsc/point_cloud.hpp"

namespace hsc {

inline constexpr int kDefaultNormalK = 16;

/// Unit surface normals, one per point. `degenerate[i]` is set when the
/// local covariance does not single out a normal direction (collinear or
/// coincident neighborhoods); the stored vector is still unit length.
struct NormalField {
  std::vector<Vec3> normals;
  std::vector<uint8_t> degenerate;

  size_t size() const { return normals.size(); }
};

/// Eigen-decomposition of a symmetric 3x3 matrix (row-major upper triangle
/// given as xx, xy, xz, yy, yz, zz). Eigenvalues ascending with matching
/// unit eigenvectors.
struct EigenDecomposition3 {
  std::array<double, 3> values;
  std::array<Vec3, 3> vectors;
};
EigenDecomposition3 eigen_symmetric_3x3(const std::array<double, 6>& m);

/// Symmetric point-to-point Chamfer distance: sum of squared NN distances
/// in both directions. Not normalized.
double chamfer_sym(const PointCloud& p, const PointCloud& p_hat);

/// Per-point variant: forward sum / |P| + backward sum / |P_hat|.
double chamfer_sym_normalized(const PointCloud& p, const PointCloud& p_hat);

/// Intrinsic resolution: the largest nearest-other-neighbor distance in
/// the cloud. Used as the PSNR peak value.
double intrinsic_peak(const PointCloud& p);

/// Covariance plane fit over each point's k nearest neighbors (the point
/// itself included); the normal is the smallest-eigenvalue direction.
/// Sign is unconstrained.
NormalField estimate_normals(const PointCloud& p, int k = kDefaultNormalK);

/// Mean squared projection of p - nn(p) onto the reconstruction's surface
/// normal at nn(p). `normals` must be indexed by `p_hat`.
double mse_point_to_plane(const PointCloud& p, const PointCloud& p_hat,
                          const NormalField& normals);

/// One direction of the point-to-plane PSNR. `db` is absent when the MSE
/// is zero (the direction is unbounded).
struct DirectionalPsnr {
  double mse = 0.0;
  double peak = 0.0;
  std::optional<double> db;
};

/// Symmetric PSNR: the minimum of the two directional values. When both
/// directions have zero MSE the result is the distinguished "identical"
/// state and db() is absent.
struct SymmetricPsnr {
  DirectionalPsnr forward;  // P -> P_hat, peak from P
  DirectionalPsnr backward; // P_hat -> P, peak from P_hat

  bool identical() const { return !forward.db && !backward.db; }
  std::optional<double> db() const;
};

DirectionalPsnr psnr_directional(const PointCloud& reference,
                                 const PointCloud& other, int k = kDefaultNormalK);
SymmetricPsnr psnr_sym(const PointCloud& p, const PointCloud& p_hat,
                       int k = kDefaultNormalK);

/// 8 * bytes / points; "points" counts the compressed file's points.
double bpp(uint64_t compressed_bytes, uint64_t compressed_point_count);

/// raw size / compressed size.
double compression_ratio(uint64_t raw_bytes, uint64_t compressed_bytes);

/// Megabits per second needed to ship `frame_bytes` every
/// `frame_interval_s` seconds.
double required_bitrate_mbps(uint64_t frame_bytes, double frame_interval_s);

/// Per-frame evaluation record surfaced as a CSV row by the CLI.
struct MetricsReport {
  uint64_t raw_bytes = 0;
  uint64_t compressed_bytes = 0;
  uint64_t raw_points = 0;
  uint64_t compressed_points = 0;
  double bpp = 0.0;
  double bpp_raw = 0.0; // auxiliary: bits per original point
  double ratio = 0.0;
  double chamfer = 0.0;
  double chamfer_normalized = 0.0;
  std::optional<double> psnr_db; // absent when the clouds are identical
  bool psnr_identical = false;
  double encode_ms = 0.0;
  double decode_ms = 0.0;
};

} // namespace hsc

#endif
