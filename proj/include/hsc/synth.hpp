// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HSC_SYNTH_HPP
#define HSC_SYNTH_HPP

#include <cstdint>

#include "hsc/point_cloud.hpp"

namespace hsc {

/// Desk-scale labeled scene: ground plane, vehicle and building boxes,
/// vegetation blobs, person cylinders, sign plates. Deterministic for a
/// given spec; class counts are hit exactly.
struct SyntheticSceneSpec {
  uint64_t seed = 1;
  size_t road = 0;
  size_t car = 0;
  size_t building = 0;
  size_t vegetation = 0;
  size_t person = 0;
  size_t traffic_sign = 0;

  size_t total() const {
    return road + car + building + vegetation + person + traffic_sign;
  }
};

/// Semantic KITTI ids used by the generator.
namespace synth_class {
inline constexpr uint16_t kRoad = 40;
inline constexpr uint16_t kCar = 10;
inline constexpr uint16_t kBuilding = 50;
inline constexpr uint16_t kVegetation = 70;
inline constexpr uint16_t kPerson = 30;
inline constexpr uint16_t kTrafficSign = 81;
} // namespace synth_class

PointCloud synth_scene(const SyntheticSceneSpec& spec);

} // namespace hsc

#endif
