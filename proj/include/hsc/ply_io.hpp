// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HSC_PLY_IO_HPP
#define HSC_PLY_IO_HPP

#include <cstdint>
#include <vector>

#include "hsc/point_cloud.hpp"

namespace hsc {

/// ASCII PLY 1.0 export for visual inspection. Vertices carry x/y/z plus
/// reflectance and class scalars when the cloud has those channels.
std::vector<uint8_t> export_ply(const PointCloud& cloud);

} // namespace hsc

#endif
