// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <map>

#include "hsc/kdtree_codec.hpp"
#include "hsc/kitti_io.hpp"
#include "hsc/semantic_filter.hpp"
#include "hsc/synth.hpp"
#include "hsc/udp_stream.hpp"
#include "test_helpers.hpp"

using namespace hsc;

TEST_SUITE_BEGIN("synth_and_stream");

TEST_CASE("synthetic scenes hit class counts exactly") {
  SyntheticSceneSpec spec;
  spec.seed = 9;
  spec.road = 5000;
  spec.car = 800;
  spec.building = 2000;
  spec.vegetation = 1200;
  spec.person = 150;
  spec.traffic_sign = 60;
  PointCloud cloud = synth_scene(spec);
  REQUIRE(cloud.size() == spec.total());
  REQUIRE(cloud.has_labels());
  REQUIRE(cloud.has_reflectance());

  std::map<uint16_t, size_t> counts;
  for (const SemanticLabel& l : cloud.labels) ++counts[l.class_id];
  CHECK(counts[synth_class::kRoad] == spec.road);
  CHECK(counts[synth_class::kCar] == spec.car);
  CHECK(counts[synth_class::kBuilding] == spec.building);
  CHECK(counts[synth_class::kVegetation] == spec.vegetation);
  CHECK(counts[synth_class::kPerson] == spec.person);
  CHECK(counts[synth_class::kTrafficSign] == spec.traffic_sign);

  SyntheticSceneSpec empty;
  CHECK_THROWS_AS(synth_scene(empty), Error);
}

TEST_CASE("same seed reproduces the same scene; different seed does not") {
  SyntheticSceneSpec spec;
  spec.seed = 1234;
  spec.road = 2000;
  spec.car = 300;
  PointCloud a = synth_scene(spec);
  PointCloud b = synth_scene(spec);
  CHECK(save_kitti_bin(a) == save_kitti_bin(b));
  CHECK(save_kitti_labels(a) == save_kitti_labels(b));
  spec.seed = 1235;
  CHECK(save_kitti_bin(synth_scene(spec)) != save_kitti_bin(a));
}

TEST_CASE("scene survives the KITTI serialization round trip") {
  SyntheticSceneSpec spec;
  spec.seed = 5;
  spec.road = 1000;
  spec.car = 200;
  spec.person = 50;
  PointCloud cloud = synth_scene(spec);
  PointCloud back =
      load_kitti_labels(save_kitti_labels(cloud), load_kitti_bin(save_kitti_bin(cloud)));
  REQUIRE(back.size() == cloud.size());
  std::map<uint16_t, size_t> counts;
  for (const SemanticLabel& l : back.labels) ++counts[l.class_id];
  CHECK(counts[synth_class::kRoad] == spec.road);
  CHECK(counts[synth_class::kCar] == spec.car);
  CHECK(counts[synth_class::kPerson] == spec.person);
}

TEST_CASE("loopback stream delivers tier-ordered frames") {
  SyntheticSceneSpec spec;
  spec.seed = 77;
  spec.road = 3000;
  spec.car = 600;
  spec.person = 120;
  spec.building = 1500;
  PointCloud cloud = synth_scene(spec);
  FilterProfile profile =
      builtin_profile(HscLevel::Hsc1, ClassConfig::semantic_kitti_default());

  std::vector<std::pair<int, EncodedFrame>> tiered;
  for (const auto& [tier, part] : partition_by_priority(cloud, profile))
    tiered.emplace_back(tier, encode_kdtree(part, 11, 5, profile.profile_id));
  REQUIRE(tiered.size() == 2);

  StreamConfig cfg;
  cfg.timeout_ms = 5000;
  StreamReport report;
  try {
    report = stream_loopback(tiered, cfg);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Transport) {
      MESSAGE("loopback sockets unavailable; skipping: " << e.what());
      return;
    }
    throw;
  }

  CHECK(report.packets_sent == report.packets_received);
  REQUIRE(report.frames.size() == 2);
  for (const FrameStreamStats& fs : report.frames) {
    CHECK(fs.delivered);
    CHECK(fs.end_to_end_ms >= 0.0);
  }
  for (uint32_t id = 0; id < tiered.size(); ++id) {
    REQUIRE(report.reassembly.frames.count(id) == 1);
    CHECK(report.reassembly.frames.at(id) == tiered[id].second);
  }

  REQUIRE(report.tiers.size() == 2);
  CHECK(report.tiers[0].tier == 0);
  CHECK(report.tiers[0].first_delivery_ms <= report.tiers[1].first_delivery_ms);

  PointCloud decoded = decode_kdtree(report.reassembly.frames.at(0));
  CHECK(decoded.size() == tiered[0].second.point_count);
}

TEST_CASE("synthetic fragment drop is accounted for") {
  PointCloud cloud = test::random_cloud(20000, 3, 50.0);
  std::vector<std::pair<int, EncodedFrame>> tiered;
  for (int i = 0; i < 8; ++i) tiered.emplace_back(0, encode_kdtree(cloud, 12, 5));

  StreamConfig cfg;
  cfg.size_limit = 2000; // many fragments so drops almost surely hit
  cfg.drop_rate = 0.10;
  cfg.drop_seed = 99;
  cfg.timeout_ms = 8000;
  cfg.pace_us = 20;
  StreamReport report;
  try {
    report = stream_loopback(tiered, cfg);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Transport) {
      MESSAGE("loopback sockets unavailable; skipping: " << e.what());
      return;
    }
    throw;
  }

  CHECK(report.packets_dropped > 0);
  CHECK(report.packets_received == report.packets_sent);
  size_t delivered = report.reassembly.frames.size();
  size_t lost = report.reassembly.losses.size();
  CHECK(delivered + lost == tiered.size());
  size_t delivered_flags = 0;
  for (const FrameStreamStats& fs : report.frames)
    if (fs.delivered) ++delivered_flags;
  CHECK(delivered_flags == delivered);
}

TEST_SUITE_END();
