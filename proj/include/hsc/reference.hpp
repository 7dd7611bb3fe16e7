// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HSC_REFERENCE_HPP
#define HSC_REFERENCE_HPP

#include "hsc/metrics.hpp"
#include "hsc/point_cloud.hpp"

namespace hsc::reference {

/// Serial O(N^2) implementations of the metric kernels. They bypass the
/// spatial index and OpenMP entirely and exist as the ground truth for the
/// fast paths (tests) and as the baseline in the kernel benchmark.

double chamfer_sym(const PointCloud& p, const PointCloud& p_hat);
double intrinsic_peak(const PointCloud& p);
NormalField estimate_normals(const PointCloud& p, int k = kDefaultNormalK);
double mse_point_to_plane(const PointCloud& p, const PointCloud& p_hat,
                          const NormalField& normals);

/// Index of the nearest point to `query`, optionally excluding one index.
size_t nearest_brute(const PointCloud& cloud, const Vec3& query,
                     ptrdiff_t exclude = -1);

} // namespace hsc::reference

#endif
