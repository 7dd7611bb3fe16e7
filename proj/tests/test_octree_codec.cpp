// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <set>

#include "hsc/kdtree_codec.hpp"
#include "hsc/octree_codec.hpp"
#include "test_helpers.hpp"

using namespace hsc;

namespace {

std::vector<Vec3> expected_positions(const VoxelizedCloud& vc) {
  std::vector<Vec3> out;
  out.reserve(vc.voxels.size());
  for (const auto& v : vc.voxels) out.push_back(vc.params.voxel_position(v));
  std::sort(out.begin(), out.end(), [](const Vec3& a, const Vec3& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.z < b.z;
  });
  return out;
}

} // namespace

TEST_SUITE_BEGIN("octree_codec");

TEST_CASE("depth follows the bounding-cube equation") {
  PointCloud cloud;
  cloud.points = {{0, 0, 0}, {100, 0, 0}};
  CHECK(voxelize(cloud, 1.0).params.depth == 7); // ceil(log2(101))

  PointCloud seven;
  seven.points = {{0, 0, 0}, {7, 0, 0}};
  CHECK(voxelize(seven, 1.0).params.depth == 3);

  PointCloud single;
  single.points = {{5, 5, 5}};
  VoxelizedCloud vc = voxelize(single, 1.0);
  CHECK(vc.params.depth == 0);
  CHECK(vc.voxels.size() == 1);
}

TEST_CASE("voxelize merges duplicates and reports them") {
  PointCloud cloud;
  cloud.points = {{0, 0, 0}, {0.2, 0, 0}};
  VoxelizedCloud vc = voxelize(cloud, 1.0); // both round to voxel 0
  CHECK(vc.voxels.size() == 1);
  CHECK(vc.duplicate_count == 1);
}

TEST_CASE("voxelize input validation") {
  CHECK_THROWS_AS(voxelize(PointCloud{}, 1.0), Error);
  PointCloud one;
  one.points = {{0, 0, 0}};
  CHECK_THROWS_AS(voxelize(one, 0.0), Error);
  CHECK_THROWS_AS(voxelize(one, -3.0), Error);
  PointCloud wide;
  wide.points = {{0, 0, 0}, {100, 0, 0}};
  CHECK_THROWS_AS(voxelize(wide, 1e8), Error); // coordinates beyond 2^21
}

TEST_CASE("voxelized coordinates honor the depth invariant") {
  PointCloud cloud = test::random_cloud(2000, 8);
  VoxelizedCloud vc = voxelize(cloud, 10.0);
  int d = vc.params.depth;
  uint32_t max_coord = 0;
  for (const auto& v : vc.voxels)
    for (uint32_t c : v) max_coord = std::max(max_coord, c);
  CHECK(max_coord < (1u << d));
  if (d >= 1) CHECK(max_coord >= (1u << (d - 1)));
}

TEST_CASE("single voxel frame has no tree levels") {
  PointCloud single;
  single.points = {{1.5, -2.25, 3.0}};
  EncodedFrame frame = encode_octree(single, 10.0);
  CHECK(frame.codec_id == CodecId::Octree);
  CHECK(frame.lattice_bits == 0);
  CHECK(frame.point_count == 1);
  PointCloud decoded = decode_octree(frame);
  REQUIRE(decoded.size() == 1);
  VoxelizedCloud vc = voxelize(single, 10.0);
  CHECK(decoded.points[0] == vc.params.voxel_position(vc.voxels[0]));
}

TEST_CASE("full 2x2x2 cube encodes one fully occupied byte") {
  PointCloud cube;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) cube.points.push_back({double(x), double(y), double(z)});
  VoxelizedCloud vc = voxelize(cube, 1.0);
  CHECK(vc.params.depth == 1);
  EncodedFrame frame = encode_octree(vc);
  CHECK(frame.point_count == 8);
  // One occupancy symbol plus coder flush.
  CHECK(frame.payload.size() <= 8);
  PointCloud decoded = decode_octree(frame);
  CHECK(decoded.size() == 8);
}

TEST_CASE("random clouds round trip to the exact voxel set") {
  PointCloud cloud = test::random_cloud(1000, 44);
  for (double scale : {1.0, 10.0, 100.0}) {
    VoxelizedCloud vc = voxelize(cloud, scale);
    EncodedFrame frame = encode_octree(vc);
    CHECK(frame.point_count == vc.voxels.size());
    PointCloud decoded = decode_octree(frame);
    CHECK(test::sorted_points(decoded) == expected_positions(vc));
  }
}

TEST_CASE("octree stream corruption is caught") {
  PointCloud cloud = test::random_cloud(600, 3);
  EncodedFrame frame = encode_octree(cloud, 20.0);
  PointCloud expected = decode_octree(frame);

  size_t flips = 0, detected = 0, changed = 0;
  for (size_t pos = 4; pos < frame.payload.size(); pos += 7) {
    EncodedFrame bad = frame;
    bad.payload[pos] ^= 0xA5;
    ++flips;
    try {
      PointCloud decoded = decode_octree(bad);
      if (test::sorted_points(decoded) != test::sorted_points(expected)) ++changed;
    } catch (const Error&) {
      ++detected;
    }
  }
  CHECK(flips > 5);
  CHECK(detected + changed == flips);
  CHECK(detected > 0);

  EncodedFrame truncated = frame;
  truncated.payload.resize(truncated.payload.size() / 2);
  CHECK_THROWS_AS(decode_octree(truncated), Error);
}

TEST_CASE("decode rejects frames from the other codec") {
  PointCloud cloud = test::random_cloud(100, 9);
  EncodedFrame kd = encode_kdtree(cloud, 8, 5);
  CHECK_THROWS_AS(decode_octree(kd), Error);
  EncodedFrame oct = encode_octree(cloud, 10.0);
  CHECK_THROWS_AS(decode_kdtree(oct), Error);
}

TEST_SUITE_END();
