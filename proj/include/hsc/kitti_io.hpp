// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HSC_KITTI_IO_HPP
#define HSC_KITTI_IO_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hsc/point_cloud.hpp"

namespace hsc {

/// Parse a KITTI `.bin` scan: 16-byte records of four little-endian f32
/// (x, y, z, reflectance). Rejects truncated files and non-finite records.
PointCloud load_kitti_bin(std::span<const uint8_t> bytes);

/// Parse a Semantic KITTI `.label` sidecar (one little-endian u32 per point)
/// and attach the labels to `cloud`. Count must match the cloud.
PointCloud load_kitti_labels(std::span<const uint8_t> bytes, PointCloud cloud);

/// Serialize back to the KITTI record layout. Reflectance defaults to 0
/// when the cloud carries none.
std::vector<uint8_t> save_kitti_bin(const PointCloud& cloud);

/// Serialize labels to the `.label` layout. Requires a labeled cloud.
std::vector<uint8_t> save_kitti_labels(const PointCloud& cloud);

// File helpers used by the CLI and tests.
std::vector<uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, std::span<const uint8_t> bytes);

PointCloud load_kitti_bin_file(const std::string& path);
PointCloud load_kitti_labels_file(const std::string& path, PointCloud cloud);

} // namespace hsc

#endif
