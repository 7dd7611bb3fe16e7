// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#include "hsc/kitti_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

namespace hsc {

namespace {

constexpr size_t kRecordSize = 16; // four little-endian f32 per point

float read_f32le(const uint8_t* p) {
  uint32_t u = static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
               (static_cast<uint32_t>(p[2]) << 16) |
               (static_cast<uint32_t>(p[3]) << 24);
  return std::bit_cast<float>(u);
}

uint32_t read_u32le(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

void write_f32le(std::vector<uint8_t>& out, float v) {
  uint32_t u = std::bit_cast<uint32_t>(v);
  out.push_back(static_cast<uint8_t>(u));
  out.push_back(static_cast<uint8_t>(u >> 8));
  out.push_back(static_cast<uint8_t>(u >> 16));
  out.push_back(static_cast<uint8_t>(u >> 24));
}

} // namespace

PointCloud load_kitti_bin(std::span<const uint8_t> bytes) {
  if (bytes.size() % kRecordSize != 0)
    raise(ErrorKind::MalformedFile,
          "KITTI scan length " + std::to_string(bytes.size()) +
              " is not a multiple of 16");
  const size_t n = bytes.size() / kRecordSize;
  PointCloud cloud;
  cloud.points.resize(n);
  cloud.reflectance.resize(n);
  for (size_t i = 0; i < n; ++i) {
    const uint8_t* rec = bytes.data() + i * kRecordSize;
    float x = read_f32le(rec);
    float y = read_f32le(rec + 4);
    float z = read_f32le(rec + 8);
    float r = read_f32le(rec + 12);
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z) ||
        !std::isfinite(r))
      raise(ErrorKind::InvalidData,
            "non-finite value in KITTI record " + std::to_string(i));
    cloud.points[i] = {x, y, z};
    cloud.reflectance[i] = std::clamp(r, 0.0f, 1.0f);
  }
  return cloud;
}

PointCloud load_kitti_labels(std::span<const uint8_t> bytes, PointCloud cloud) {
  if (bytes.size() != 4 * cloud.size())
    raise(ErrorKind::LabelCount,
          "label file holds " + std::to_string(bytes.size() / 4) +
              " records for a " + std::to_string(cloud.size()) + "-point cloud");
  cloud.labels.resize(cloud.size());
  for (size_t i = 0; i < cloud.size(); ++i)
    cloud.labels[i] = SemanticLabel::unpack(read_u32le(bytes.data() + 4 * i));
  return cloud;
}

std::vector<uint8_t> save_kitti_bin(const PointCloud& cloud) {
  std::vector<uint8_t> out;
  out.reserve(cloud.size() * kRecordSize);
  for (size_t i = 0; i < cloud.size(); ++i) {
    const Vec3& p = cloud.points[i];
    write_f32le(out, static_cast<float>(p.x));
    write_f32le(out, static_cast<float>(p.y));
    write_f32le(out, static_cast<float>(p.z));
    write_f32le(out, cloud.has_reflectance() ? cloud.reflectance[i] : 0.0f);
  }
  return out;
}

std::vector<uint8_t> save_kitti_labels(const PointCloud& cloud) {
  if (!cloud.has_labels())
    raise(ErrorKind::MissingLabels, "save_kitti_labels: cloud has no labels");
  std::vector<uint8_t> out;
  out.reserve(cloud.size() * 4);
  for (const SemanticLabel& l : cloud.labels) {
    uint32_t w = l.pack();
    out.push_back(static_cast<uint8_t>(w));
    out.push_back(static_cast<uint8_t>(w >> 8));
    out.push_back(static_cast<uint8_t>(w >> 16));
    out.push_back(static_cast<uint8_t>(w >> 24));
  }
  return out;
}

std::vector<uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    raise(ErrorKind::Io, "cannot open " + path);
  in.seekg(0, std::ios::end);
  std::streamoff len = in.tellg();
  in.seekg(0, std::ios::beg);
  std::vector<uint8_t> bytes(static_cast<size_t>(len));
  if (len > 0) in.read(reinterpret_cast<char*>(bytes.data()), len);
  if (!in)
    raise(ErrorKind::Io, "failed reading " + path);
  return bytes;
}

void write_file(const std::string& path, std::span<const uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    raise(ErrorKind::Io, "cannot create " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out)
    raise(ErrorKind::Io, "failed writing " + path);
}

PointCloud load_kitti_bin_file(const std::string& path) {
  return load_kitti_bin(read_file(path));
}

PointCloud load_kitti_labels_file(const std::string& path, PointCloud cloud) {
  return load_kitti_labels(read_file(path), std::move(cloud));
}

} // namespace hsc
