// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstring>

#include "hsc/kitti_io.hpp"
#include "hsc/ply_io.hpp"
#include "test_helpers.hpp"

using namespace hsc;

namespace {

std::vector<uint8_t> pack_records(const std::vector<float>& values) {
  std::vector<uint8_t> bytes(values.size() * 4);
  std::memcpy(bytes.data(), values.data(), bytes.size());
  return bytes;
}

} // namespace

TEST_SUITE_BEGIN("pointcloud_core");

TEST_CASE("load_kitti_bin decodes records in order") {
  auto bytes = pack_records({1.0f, 2.0f, 3.0f, 0.5f, -1.0f, 0.0f, 4.0f, 0.0f});
  PointCloud cloud = load_kitti_bin(bytes);
  REQUIRE(cloud.size() == 2);
  CHECK(cloud.points[0] == Vec3{1.0, 2.0, 3.0});
  CHECK(cloud.points[1] == Vec3{-1.0, 0.0, 4.0});
  CHECK(cloud.reflectance[0] == 0.5f);
  CHECK(cloud.reflectance[1] == 0.0f);
}

TEST_CASE("load_kitti_bin edge cases") {
  CHECK(load_kitti_bin({}).empty());

  std::vector<uint8_t> odd(17, 0);
  CHECK_THROWS_AS(load_kitti_bin(odd), Error);
  try {
    load_kitti_bin(odd);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MalformedFile);
  }

  auto bad = pack_records({1.0f, std::nanf(""), 3.0f, 0.0f});
  try {
    load_kitti_bin(bad);
    FAIL("expected invalid-data error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidData);
    CHECK(std::string(e.what()).find("0") != std::string::npos);
  }
}

TEST_CASE("load_kitti_labels unpacks class and instance") {
  auto bytes = pack_records({1.0f, 2.0f, 3.0f, 0.5f});
  PointCloud cloud = load_kitti_bin(bytes);
  std::vector<uint8_t> label_bytes = {0x28, 0x00, 0x01, 0x00}; // 0x00010028
  cloud = load_kitti_labels(label_bytes, std::move(cloud));
  REQUIRE(cloud.has_labels());
  CHECK(cloud.labels[0].class_id == 40);
  CHECK(cloud.labels[0].instance_id == 1);

  PointCloud empty = load_kitti_labels({}, PointCloud{});
  CHECK(empty.empty());

  PointCloud three = load_kitti_bin(pack_records(std::vector<float>(12, 1.0f)));
  std::vector<uint8_t> short_labels(8, 0);
  try {
    load_kitti_labels(short_labels, std::move(three));
    FAIL("expected label-count error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LabelCount);
  }
}

TEST_CASE("label words pack and unpack losslessly") {
  test::Rand rng(7);
  for (int i = 0; i < 1000; ++i) {
    uint32_t word = static_cast<uint32_t>(rng.integer(1ull << 32));
    CHECK(SemanticLabel::unpack(word).pack() == word);
  }
}

TEST_CASE("bounding_box examples") {
  PointCloud cloud;
  cloud.points = {{0, 0, 0}, {1, 2, -3}};
  BoundingBox box = bounding_box(cloud);
  CHECK(box.min == Vec3{0, 0, -3});
  CHECK(box.max == Vec3{1, 2, 0});

  PointCloud single;
  single.points = {{4, 5, 6}};
  BoundingBox sbox = bounding_box(single);
  CHECK(sbox.min == sbox.max);
  CHECK(sbox.min == Vec3{4, 5, 6});

  CHECK_THROWS_AS(bounding_box(PointCloud{}), Error);
}

TEST_CASE("bounding_box matches exhaustive scan and contains every point") {
  PointCloud cloud = test::random_cloud(1000, 11);
  BoundingBox box = bounding_box(cloud);
  Vec3 lo = cloud.points[0], hi = cloud.points[0];
  for (const Vec3& p : cloud.points)
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::min(lo[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
  CHECK(box.min == lo);
  CHECK(box.max == hi);
  for (const Vec3& p : cloud.points) CHECK(box.contains(p));
}

TEST_CASE("kitti serialization round trip is bit-exact") {
  test::Rand rng(3);
  PointCloud cloud;
  for (int i = 0; i < 500; ++i) {
    // Values that came from f32, as KITTI data always does.
    cloud.points.push_back({static_cast<float>(rng.uniform(-80, 80)),
                            static_cast<float>(rng.uniform(-80, 80)),
                            static_cast<float>(rng.uniform(-4, 4))});
    cloud.reflectance.push_back(static_cast<float>(rng.uniform()));
    cloud.labels.push_back({static_cast<uint16_t>(rng.integer(260)),
                            static_cast<uint16_t>(rng.integer(100))});
  }
  std::vector<uint8_t> bin = save_kitti_bin(cloud);
  std::vector<uint8_t> lab = save_kitti_labels(cloud);
  PointCloud back = load_kitti_labels(lab, load_kitti_bin(bin));
  REQUIRE(back.size() == cloud.size());
  for (size_t i = 0; i < cloud.size(); ++i) {
    CHECK(back.points[i] == cloud.points[i]);
    CHECK(back.reflectance[i] == cloud.reflectance[i]);
    CHECK(back.labels[i] == cloud.labels[i]);
  }
  CHECK(save_kitti_bin(back) == bin);
}

TEST_CASE("export_ply structure") {
  std::vector<uint8_t> empty = export_ply(PointCloud{});
  std::string header(empty.begin(), empty.end());
  CHECK(header.find("element vertex 0") != std::string::npos);

  PointCloud two;
  two.points = {{1, 2, 3}, {4, 5, 6}};
  test::ParsedPly ply = test::parse_ply(export_ply(two));
  CHECK(ply.vertex_count == 2);
  REQUIRE(ply.rows.size() == 2);
  CHECK(ply.rows[0].size() == 3);
}

TEST_CASE("export_ply reparse round trip within 1e-6") {
  PointCloud cloud = test::random_cloud(200, 21);
  cloud.reflectance.assign(cloud.size(), 0.25f);
  cloud.labels.assign(cloud.size(), SemanticLabel{40, 1});
  test::ParsedPly ply = test::parse_ply(export_ply(cloud));
  REQUIRE(ply.vertex_count == cloud.size());
  REQUIRE(ply.properties.size() == 5); // x y z reflectance class
  for (size_t i = 0; i < cloud.size(); ++i) {
    REQUIRE(ply.rows[i].size() == 5);
    for (int a = 0; a < 3; ++a)
      CHECK(std::abs(ply.rows[i][static_cast<size_t>(a)] - cloud.points[i][a]) <= 1e-6);
    CHECK(ply.rows[i][3] == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(ply.rows[i][4] == 40.0);
  }
}

TEST_SUITE_END();
