// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hsc/kdtree_codec.hpp"
#include "test_helpers.hpp"

using namespace hsc;

TEST_SUITE_BEGIN("kdtree_codec");

TEST_CASE("quantize maps cells and centers as expected") {
  PointCloud cloud;
  cloud.points = {{0, 0, 0}, {10, 10, 10}, {9, 9, 9}};
  QuantizedCloud qc = quantize(cloud, 1);
  CHECK(qc.cells[2] == std::array<uint32_t, 3>{1, 1, 1});
  Vec3 center = qc.params.cell_center(qc.cells[2]);
  CHECK(center.x == doctest::Approx(7.5));
  CHECK(center.y == doctest::Approx(7.5));
  CHECK(center.z == doctest::Approx(7.5));
  for (int a = 0; a < 3; ++a) CHECK(std::abs(center[a] - 9.0) <= 2.5);
}

TEST_CASE("q=0 collapses everything to the box center") {
  PointCloud cloud;
  cloud.points = {{0, 0, 0}, {10, 10, 10}, {3, 7, 2}};
  QuantizedCloud qc = quantize(cloud, 0);
  for (const auto& c : qc.cells) CHECK(c == std::array<uint32_t, 3>{0, 0, 0});
  PointCloud back = dequantize(qc);
  for (const Vec3& p : back.points) {
    CHECK(p.x == doctest::Approx(5.0));
    CHECK(p.y == doctest::Approx(5.0));
    CHECK(p.z == doctest::Approx(5.0));
  }
}

TEST_CASE("quantize errors") {
  CHECK_THROWS_AS(quantize(PointCloud{}, 5), Error);
  PointCloud one;
  one.points = {{0, 0, 0}};
  CHECK_THROWS_AS(quantize(one, 15), Error);
  CHECK_THROWS_AS(quantize(one, -1), Error);
}

TEST_CASE("q=14 reconstruction error stays within half a cell, exhaustively") {
  PointCloud cloud = test::random_cloud(10000, 31, 80.0);
  QuantizedCloud qc = quantize(cloud, 14);
  PointCloud centers = dequantize(qc);
  for (size_t i = 0; i < cloud.size(); ++i)
    for (int a = 0; a < 3; ++a) {
      double bound = qc.params.step[a] / 2.0 + 1e-9;
      CHECK(std::abs(cloud.points[i][a] - centers.points[i][a]) <= bound);
    }
  // Half a cell equals extent / 2^15 on the lattice box.
  for (int a = 0; a < 3; ++a) {
    double extent = static_cast<double>(qc.params.lattice_bbox[a + 3]) -
                    static_cast<double>(qc.params.lattice_bbox[a]);
    CHECK(qc.params.step[a] / 2.0 == doctest::Approx(extent / 32768.0));
  }
}

TEST_CASE("split_code worked examples") {
  SplitCode c = split_code(10, 3);
  CHECK(c.value == 2);
  REQUIRE(c.low_is_smaller.has_value());
  CHECK(*c.low_is_smaller);

  SplitCode balanced = split_code(10, 5);
  CHECK(balanced.value == 0);
  CHECK_FALSE(balanced.low_is_smaller.has_value());

  CHECK_THROWS_AS(split_code(4, 5), Error);
}

TEST_CASE("split_code value fits the stated bit budget") {
  for (uint64_t n = 1; n <= 200; ++n)
    for (uint64_t low = 0; low <= n; ++low) {
      SplitCode c = split_code(n, low);
      int bits = split_value_bits(n);
      bool representable = c.value < (1u << bits);
      CHECK(representable);
    }
}

TEST_CASE("split_code inverse is exact for all n_total <= 64") {
  for (uint64_t n = 0; n <= 64; ++n)
    for (uint64_t low = 0; low <= n; ++low) {
      SplitCode c = split_code(n, low);
      CHECK(split_decode(n, c.value, c.low_is_smaller) == low);
    }
}

TEST_CASE("single-point cloud decodes to its cell center at any q") {
  PointCloud cloud;
  cloud.points = {{1.25, -3.5, 0.75}};
  for (int q : {0, 3, 14}) {
    EncodedFrame frame = encode_kdtree(cloud, q, 5);
    CHECK(frame.point_count == 1);
    PointCloud decoded = decode_kdtree(frame);
    REQUIRE(decoded.size() == 1);
    PointCloud expected = dequantize(quantize(cloud, q));
    CHECK(decoded.points[0] == expected.points[0]);
  }
}

TEST_CASE("balanced lattice codes smaller than a skewed cloud of equal size") {
  // One point per voxel of the full 4x4x4 lattice (q = 2).
  PointCloud uniform;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      for (int z = 0; z < 4; ++z)
        uniform.points.push_back({0.5 + x, 0.5 + y, 0.5 + z});

  // Same count and same bounding box, but points piled in one corner.
  PointCloud skewed;
  skewed.points.push_back({0.5, 0.5, 0.5});
  skewed.points.push_back({3.5, 3.5, 3.5});
  for (int i = 0; i < 62; ++i) skewed.points.push_back({0.6, 0.6, 0.6});

  EncodedFrame balanced = encode_kdtree(uniform, 2, 0);
  EncodedFrame corner = encode_kdtree(skewed, 2, 0);
  CHECK(balanced.payload.size() < corner.payload.size());

  // Every split of the full lattice is perfectly balanced.
  QuantizedCloud qc = quantize(uniform, 2);
  for (uint64_t n : {64ull, 32ull, 16ull, 8ull, 4ull, 2ull}) {
    SplitCode c = split_code(n, n / 2);
    CHECK(c.value == 0);
    CHECK_FALSE(c.low_is_smaller.has_value());
  }
  CHECK(qc.size() == 64);
}

TEST_CASE("random clouds round trip exactly at several q levels") {
  for (int q : {5, 10, 14}) {
    PointCloud cloud = test::random_cloud(1000, 77 + static_cast<uint64_t>(q));
    EncodedFrame frame = encode_kdtree(cloud, q, 5);
    CHECK(frame.codec_id == CodecId::KdTree);
    CHECK(frame.lattice_bits == q);
    CHECK(frame.point_count == cloud.size());

    PointCloud decoded = decode_kdtree(frame);
    REQUIRE(decoded.size() == cloud.size());
    PointCloud expected = dequantize(quantize(cloud, q));
    CHECK(test::sorted_points(decoded) == test::sorted_points(expected));
  }
}

TEST_CASE("duplicate points keep their multiplicity") {
  PointCloud cloud;
  for (int i = 0; i < 5; ++i) cloud.points.push_back({1.0, 2.0, 3.0});
  cloud.points.push_back({-4.0, 0.0, 2.0});
  cloud.points.push_back({8.0, -1.0, 0.5});
  EncodedFrame frame = encode_kdtree(cloud, 10, 5);
  PointCloud decoded = decode_kdtree(frame);
  REQUIRE(decoded.size() == 7);
  PointCloud expected = dequantize(quantize(cloud, 10));
  CHECK(test::sorted_points(decoded) == test::sorted_points(expected));
}

TEST_CASE("encode is byte-deterministic") {
  PointCloud cloud = test::random_cloud(2000, 13);
  EncodedFrame a = encode_kdtree(cloud, 11, 7);
  EncodedFrame b = encode_kdtree(cloud, 11, 7);
  CHECK(a.serialize() == b.serialize());
}

TEST_CASE("every compression level round trips and richer contexts do not break") {
  PointCloud cloud = test::random_cloud(500, 201);
  PointCloud expected = dequantize(quantize(cloud, 8));
  for (int level = 0; level <= 10; ++level) {
    EncodedFrame frame = encode_kdtree(cloud, 8, level);
    CHECK(frame.compression_level == level);
    PointCloud decoded = decode_kdtree(frame);
    CHECK(test::sorted_points(decoded) == test::sorted_points(expected));
  }
  CHECK_THROWS_AS(encode_kdtree(cloud, 8, 11), Error);
}

TEST_CASE("frame serialize/parse round trip") {
  PointCloud cloud = test::random_cloud(300, 17);
  EncodedFrame frame = encode_kdtree(cloud, 9, 3, kProfileHsc1);
  std::vector<uint8_t> bytes = frame.serialize();
  EncodedFrame back = EncodedFrame::parse(bytes);
  CHECK(back == frame);
  CHECK(back.profile_id == kProfileHsc1);
}

TEST_CASE("bad magic and version are format errors") {
  PointCloud cloud = test::random_cloud(50, 2);
  std::vector<uint8_t> bytes = encode_kdtree(cloud, 5, 5).serialize();
  {
    auto bad = bytes;
    bad[0] = 'X';
    CHECK_THROWS_AS(EncodedFrame::parse(bad), Error);
  }
  {
    auto bad = bytes;
    bad[4] = 99;
    CHECK_THROWS_AS(EncodedFrame::parse(bad), Error);
  }
  {
    auto bad = bytes;
    bad.pop_back();
    CHECK_THROWS_AS(EncodedFrame::parse(bad), Error);
  }
}

TEST_CASE("tampered payload is detected or decodes to a different multiset") {
  PointCloud cloud = test::random_cloud(800, 55);
  EncodedFrame frame = encode_kdtree(cloud, 12, 5);
  PointCloud expected = decode_kdtree(frame);

  size_t flips = 0, detected = 0, changed = 0;
  for (size_t pos = 4; pos < frame.payload.size(); pos += 13) {
    EncodedFrame bad = frame;
    bad.payload[pos] ^= 0x5A;
    ++flips;
    try {
      PointCloud decoded = decode_kdtree(bad);
      if (test::sorted_points(decoded) != test::sorted_points(expected)) ++changed;
    } catch (const Error&) {
      ++detected;
    }
  }
  CHECK(flips > 10);
  CHECK(detected + changed == flips);
}

TEST_CASE("decoder underruns on truncated payload") {
  PointCloud cloud = test::random_cloud(700, 5);
  EncodedFrame frame = encode_kdtree(cloud, 12, 5);
  frame.payload.resize(frame.payload.size() / 2);
  CHECK_THROWS_AS(decode_kdtree(frame), Error);
}

TEST_CASE("mean compressed size grows with q over a small corpus") {
  std::vector<PointCloud> corpus;
  for (uint64_t s = 0; s < 5; ++s) corpus.push_back(test::random_cloud(3000, 900 + s));
  double prev = 0.0;
  for (int q : {6, 10, 14}) {
    double total = 0.0;
    for (const PointCloud& cloud : corpus)
      total += static_cast<double>(encode_kdtree(cloud, q, 5).serialized_size());
    double mean = total / static_cast<double>(corpus.size());
    CHECK(mean > prev);
    prev = mean;
  }
}

TEST_CASE("degenerate axes collapse to one cell") {
  PointCloud flat; // all z equal, exactly representable
  flat.points = {{0, 0, 2}, {4, 1, 2}, {1, 3, 2}, {2.5, 0.5, 2}};
  QuantizedCloud qc = quantize(flat, 4);
  CHECK(qc.params.cells[2] == 1);
  CHECK(qc.params.step[2] == 0.0);
  EncodedFrame frame = encode_kdtree(flat, 4, 5);
  PointCloud decoded = decode_kdtree(frame);
  for (const Vec3& p : decoded.points) CHECK(p.z == 2.0);
  CHECK(test::sorted_points(decoded) == test::sorted_points(dequantize(qc)));
}

TEST_SUITE_END();
