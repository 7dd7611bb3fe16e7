// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#include "hsc/synth.hpp"

#include <cmath>
#include <random>

#include "hsc/error.hpp"

namespace hsc {

namespace {

// mt19937_64 output is pinned by the standard; the double mappings below
// keep scene generation reproducible for a given seed.
class Rng {
public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double gauss(double sigma) {
    double u1 = uniform();
    double u2 = uniform();
    // Box-Muller; clamp u1 away from 0.
    u1 = std::max(u1, 0x1.0p-53);
    return sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  size_t index(size_t n) { return static_cast<size_t>(uniform() * static_cast<double>(n)) % n; }

private:
  std::mt19937_64 gen_;
};

void append(PointCloud& cloud, const Vec3& p, float refl, uint16_t cls,
            uint16_t instance) {
  cloud.points.push_back(p);
  cloud.reflectance.push_back(refl);
  cloud.labels.push_back({cls, instance});
}

void gen_road(PointCloud& cloud, Rng& rng, size_t count) {
  for (size_t i = 0; i < count; ++i) {
    Vec3 p{rng.uniform(-60.0, 60.0), rng.uniform(-60.0, 60.0), rng.gauss(0.02)};
    append(cloud, p, static_cast<float>(rng.uniform(0.1, 0.4)), synth_class::kRoad, 0);
  }
}

struct BoxCluster {
  Vec3 center;
  Vec3 half;
};

void gen_boxes(PointCloud& cloud, Rng& rng, size_t count, uint16_t cls,
               size_t points_per_cluster, const Vec3& min_size,
               const Vec3& max_size, double placement_radius, bool surface) {
  size_t clusters = std::max<size_t>(1, count / std::max<size_t>(points_per_cluster, 1));
  std::vector<BoxCluster> boxes(clusters);
  for (BoxCluster& b : boxes) {
    b.half = {rng.uniform(min_size.x, max_size.x) / 2.0,
              rng.uniform(min_size.y, max_size.y) / 2.0,
              rng.uniform(min_size.z, max_size.z) / 2.0};
    b.center = {rng.uniform(-placement_radius, placement_radius),
                rng.uniform(-placement_radius, placement_radius), b.half.z};
  }
  for (size_t i = 0; i < count; ++i) {
    size_t c = rng.index(clusters);
    const BoxCluster& b = boxes[c];
    Vec3 p{rng.uniform(-b.half.x, b.half.x), rng.uniform(-b.half.y, b.half.y),
           rng.uniform(-b.half.z, b.half.z)};
    if (surface) {
      // Project onto one of the four side walls.
      if (rng.uniform() < 0.5)
        p.x = (rng.uniform() < 0.5 ? -b.half.x : b.half.x);
      else
        p.y = (rng.uniform() < 0.5 ? -b.half.y : b.half.y);
    }
    append(cloud, b.center + p, static_cast<float>(rng.uniform(0.2, 0.9)), cls,
           static_cast<uint16_t>(c + 1));
  }
}

void gen_vegetation(PointCloud& cloud, Rng& rng, size_t count) {
  size_t blobs = std::max<size_t>(1, count / 1500);
  std::vector<Vec3> centers(blobs);
  std::vector<double> radii(blobs);
  for (size_t b = 0; b < blobs; ++b) {
    centers[b] = {rng.uniform(-55.0, 55.0), rng.uniform(-55.0, 55.0),
                  rng.uniform(2.0, 6.0)};
    radii[b] = rng.uniform(1.0, 3.0);
  }
  for (size_t i = 0; i < count; ++i) {
    size_t b = rng.index(blobs);
    // Uniform in the ball via gaussian direction and cbrt radius.
    Vec3 dir{rng.gauss(1.0), rng.gauss(1.0), rng.gauss(1.0)};
    double len = norm(dir);
    if (len == 0.0) dir = {1, 0, 0}, len = 1.0;
    double r = radii[b] * std::cbrt(rng.uniform());
    Vec3 p = centers[b] + dir * (r / len);
    append(cloud, p, static_cast<float>(rng.uniform(0.3, 0.8)),
           synth_class::kVegetation, static_cast<uint16_t>(b + 1));
  }
}

void gen_persons(PointCloud& cloud, Rng& rng, size_t count) {
  size_t cylinders = std::max<size_t>(1, count / 250);
  std::vector<Vec3> centers(cylinders);
  for (size_t c = 0; c < cylinders; ++c)
    centers[c] = {rng.uniform(-45.0, 45.0), rng.uniform(-45.0, 45.0), 0.0};
  for (size_t i = 0; i < count; ++i) {
    size_t c = rng.index(cylinders);
    double angle = rng.uniform(0.0, 6.283185307179586);
    double radius = 0.3 * std::sqrt(rng.uniform());
    Vec3 p{centers[c].x + radius * std::cos(angle),
           centers[c].y + radius * std::sin(angle), rng.uniform(0.0, 1.7)};
    append(cloud, p, static_cast<float>(rng.uniform(0.2, 0.7)), synth_class::kPerson,
           static_cast<uint16_t>(c + 1));
  }
}

void gen_signs(PointCloud& cloud, Rng& rng, size_t count) {
  size_t plates = std::max<size_t>(1, count / 200);
  std::vector<Vec3> centers(plates);
  for (size_t c = 0; c < plates; ++c)
    centers[c] = {rng.uniform(-50.0, 50.0), rng.uniform(-50.0, 50.0),
                  rng.uniform(2.2, 3.0)};
  for (size_t i = 0; i < count; ++i) {
    size_t c = rng.index(plates);
    Vec3 p{centers[c].x + rng.uniform(-0.3, 0.3), centers[c].y + rng.gauss(0.01),
           centers[c].z + rng.uniform(-0.3, 0.3)};
    append(cloud, p, static_cast<float>(rng.uniform(0.6, 1.0)),
           synth_class::kTrafficSign, static_cast<uint16_t>(c + 1));
  }
}

} // namespace

PointCloud synth_scene(const SyntheticSceneSpec& spec) {
  if (spec.total() == 0)
    raise(ErrorKind::InvalidParameter, "synth_scene: zero total points");

  Rng rng(spec.seed);
  PointCloud cloud;
  cloud.reserve(spec.total());

  gen_road(cloud, rng, spec.road);
  gen_boxes(cloud, rng, spec.car, synth_class::kCar, 800, {3.8, 1.6, 1.3},
            {5.2, 2.0, 1.8}, 40.0, false);
  gen_boxes(cloud, rng, spec.building, synth_class::kBuilding, 8000,
            {10.0, 8.0, 6.0}, {25.0, 20.0, 15.0}, 55.0, true);
  gen_vegetation(cloud, rng, spec.vegetation);
  gen_persons(cloud, rng, spec.person);
  gen_signs(cloud, rng, spec.traffic_sign);

  cloud.check_channels();
  return cloud;
}

} // namespace hsc
