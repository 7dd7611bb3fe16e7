// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0
//
// hsc: semantic LiDAR point-cloud compression bench tool.
//
// Verbs: compress, decompress, evaluate, sweep, synth, stream.
// Exit codes: 0 success, 1 usage, 2 data error, 3 internal error.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hsc/error.hpp"
#include "hsc/frame.hpp"
#include "hsc/kdtree_codec.hpp"
#include "hsc/kitti_io.hpp"
#include "hsc/metrics.hpp"
#include "hsc/octree_codec.hpp"
#include "hsc/ply_io.hpp"
#include "hsc/semantic_filter.hpp"
#include "hsc/synth.hpp"
#include "hsc/udp_stream.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using hsc::Error;
using hsc::ErrorKind;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

// ---------------------------------------------------------------------------
// CSV

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// One column set for evaluate and sweep; documented in the README and never
// reordered.
const char* kMetricsCsvHeader =
    "frame,codec,profile,comparison,q,scale,level,raw_points,kept_points,"
    "compressed_points,raw_bytes,compressed_bytes,bpp,bpp_raw,ratio,chamfer,"
    "chamfer_norm,psnr_db,duplicates,encode_ms,decode_ms,filter_ms,io_ms,status";

struct CsvRow {
  std::string frame, codec, profile, comparison;
  std::optional<int> q;
  std::optional<double> scale;
  std::optional<int> level;
  std::optional<uint64_t> raw_points, kept_points, compressed_points;
  std::optional<uint64_t> raw_bytes, compressed_bytes;
  std::optional<double> bpp, bpp_raw, ratio, chamfer, chamfer_norm;
  std::string psnr_db; // number, "identical", or empty
  std::optional<uint64_t> duplicates;
  std::optional<double> encode_ms, decode_ms, filter_ms, io_ms;
  std::string status = "ok";

  std::string line() const {
    auto opt_i = [](const auto& v) { return v ? std::to_string(*v) : std::string(); };
    auto opt_d = [](const std::optional<double>& v) { return v ? fmt_num(*v) : std::string(); };
    std::vector<std::string> f = {
        csv_escape(frame), codec, profile, comparison, opt_i(q), opt_d(scale),
        opt_i(level), opt_i(raw_points), opt_i(kept_points), opt_i(compressed_points),
        opt_i(raw_bytes), opt_i(compressed_bytes), opt_d(bpp), opt_d(bpp_raw),
        opt_d(ratio), opt_d(chamfer), opt_d(chamfer_norm), psnr_db,
        opt_i(duplicates), opt_d(encode_ms), opt_d(decode_ms), opt_d(filter_ms),
        opt_d(io_ms), csv_escape(status)};
    std::string out;
    for (size_t i = 0; i < f.size(); ++i) {
      if (i) out += ',';
      out += f[i];
    }
    return out;
  }
};

// ---------------------------------------------------------------------------
// Shared input handling

struct CommonOptions {
  std::string classes_path;
  std::string profile_name = "hsc0";
  std::string labels_path;
  int k = hsc::kDefaultNormalK;
};

hsc::ClassConfig load_classes(const std::string& path) {
  if (path.empty()) return hsc::ClassConfig::semantic_kitti_default();
  return hsc::ClassConfig::parse_file(path);
}

hsc::FilterProfile resolve_profile(const std::string& name,
                                   const hsc::ClassConfig& config) {
  if (name == "hsc0") return hsc::builtin_profile(hsc::HscLevel::Hsc0, config);
  if (name == "hsc1") return hsc::builtin_profile(hsc::HscLevel::Hsc1, config);
  if (name == "hsc2") return hsc::builtin_profile(hsc::HscLevel::Hsc2, config);
  return hsc::load_profile_file(name, config);
}

std::string default_label_path(const std::string& bin_path) {
  std::string path = bin_path;
  size_t dot = path.rfind('.');
  if (dot != std::string::npos) path.resize(dot);
  return path + ".label";
}

bool file_exists(const std::string& path) {
  std::ifstream f(path);
  return f.good();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

hsc::PointCloud load_scan(const std::string& path, const std::string& labels_path,
                          bool need_labels) {
  hsc::PointCloud cloud = hsc::load_kitti_bin_file(path);
  std::string lp = labels_path.empty() ? default_label_path(path) : labels_path;
  if (file_exists(lp)) {
    cloud = hsc::load_kitti_labels_file(lp, std::move(cloud));
  } else if (need_labels) {
    hsc::raise(ErrorKind::MissingLabels,
               "no label file for " + path + " (looked for " + lp + ")");
  }
  return cloud;
}

// Point cloud from either a raw scan or a compressed frame.
hsc::PointCloud load_any(const std::string& path, uint64_t* file_bytes,
                         hsc::EncodedFrame* frame_out) {
  std::vector<uint8_t> bytes = hsc::read_file(path);
  if (file_bytes) *file_bytes = bytes.size();
  if (ends_with(path, ".hscf")) {
    hsc::EncodedFrame frame = hsc::EncodedFrame::parse(bytes);
    if (frame_out) *frame_out = frame;
    return frame.codec_id == hsc::CodecId::KdTree ? hsc::decode_kdtree(frame)
                                                  : hsc::decode_octree(frame);
  }
  return hsc::load_kitti_bin(bytes);
}

std::string psnr_field(const hsc::SymmetricPsnr& psnr) {
  if (psnr.identical()) return "identical";
  return fmt_num(*psnr.db());
}

// ---------------------------------------------------------------------------
// compress / decompress

struct CodecChoice {
  std::string codec = "kdtree";
  int q = 10;
  int level = 7;
  double scale = 100.0;
};

hsc::EncodedFrame encode_with(const CodecChoice& c, const hsc::PointCloud& cloud,
                              uint8_t profile_id, uint64_t* duplicates = nullptr) {
  if (c.codec == "kdtree") return hsc::encode_kdtree(cloud, c.q, c.level, profile_id);
  hsc::VoxelizedCloud vc = hsc::voxelize(cloud, c.scale);
  if (duplicates) *duplicates = vc.duplicate_count;
  return hsc::encode_octree(vc, profile_id);
}

int cmd_compress(const std::string& input, const std::string& out_path,
                 const CommonOptions& common, const CodecChoice& choice) {
  const hsc::ClassConfig config = load_classes(common.classes_path);
  hsc::FilterProfile profile = resolve_profile(common.profile_name, config);

  hsc::PointCloud cloud =
      load_scan(input, common.labels_path, !profile.drop_classes.empty());

  Clock::time_point t0 = Clock::now();
  hsc::FilterOutcome filtered = hsc::filter(cloud, profile);
  double filter_ms = ms_since(t0);
  if (filtered.kept.empty())
    hsc::raise(ErrorKind::EmptyInput, "profile " + profile.name +
                                          " removed every point of " + input);

  uint64_t duplicates = 0;
  t0 = Clock::now();
  hsc::EncodedFrame frame =
      encode_with(choice, filtered.kept, profile.profile_id, &duplicates);
  double encode_ms = ms_since(t0);

  std::vector<uint8_t> bytes = frame.serialize();
  std::string out = out_path.empty() ? input.substr(0, input.rfind('.')) + ".hscf"
                                     : out_path;
  hsc::write_file(out, bytes);

  hsc::PacketizerConfig pcfg;
  std::string dup_note =
      choice.codec == "octree" ? ", duplicates " + std::to_string(duplicates) : "";
  std::printf(
      "%s: %zu points -> %zu kept (%s), %zu bytes, bpp %.3f, ratio %.1f, "
      "encode %.2f ms (filter %.2f ms)%s, single_packet=%s -> %s\n",
      input.c_str(), cloud.size(), filtered.kept.size(), profile.name.c_str(),
      bytes.size(), hsc::bpp(bytes.size(), frame.point_count),
      hsc::compression_ratio(16 * cloud.size(), bytes.size()), encode_ms, filter_ms,
      dup_note.c_str(), hsc::fits_single_packet(frame, pcfg) ? "yes" : "no",
      out.c_str());
  return 0;
}

int cmd_decompress(const std::string& input, const std::string& out_path) {
  std::vector<uint8_t> bytes = hsc::read_file(input);
  Clock::time_point t0 = Clock::now();
  hsc::EncodedFrame frame = hsc::EncodedFrame::parse(bytes);
  hsc::PointCloud cloud = frame.codec_id == hsc::CodecId::KdTree
                              ? hsc::decode_kdtree(frame)
                              : hsc::decode_octree(frame);
  double decode_ms = ms_since(t0);

  std::string out = out_path.empty() ? input.substr(0, input.rfind('.')) + ".bin"
                                     : out_path;
  if (ends_with(out, ".ply"))
    hsc::write_file(out, hsc::export_ply(cloud));
  else
    hsc::write_file(out, hsc::save_kitti_bin(cloud));
  std::printf("%s: %u points decoded in %.2f ms -> %s\n", input.c_str(),
              frame.point_count, decode_ms, out.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// evaluate

CsvRow metrics_row(const hsc::PointCloud& reference, const hsc::PointCloud& decoded,
                   const std::string& comparison, int k) {
  CsvRow row;
  row.comparison = comparison;
  row.raw_points = reference.size();
  row.compressed_points = decoded.size();
  row.chamfer = hsc::chamfer_sym(reference, decoded);
  row.chamfer_norm = hsc::chamfer_sym_normalized(reference, decoded);
  row.psnr_db = psnr_field(hsc::psnr_sym(reference, decoded, k));
  return row;
}

int cmd_evaluate(const std::string& original, const std::string& decoded,
                 const std::string& raw, const CommonOptions& common,
                 const std::string& out_path) {
  uint64_t orig_bytes = 0, dec_bytes = 0;
  hsc::EncodedFrame frame;
  hsc::PointCloud ref = load_any(original, &orig_bytes, nullptr);
  bool decoded_is_frame = ends_with(decoded, ".hscf");
  hsc::PointCloud rec = load_any(decoded, &dec_bytes, &frame);

  std::ostringstream csv;
  csv << kMetricsCsvHeader << '\n';

  CsvRow row = metrics_row(ref, rec, "vs_reference", common.k);
  row.frame = original;
  row.raw_bytes = 16 * ref.size();
  if (decoded_is_frame) {
    row.codec = frame.codec_id == hsc::CodecId::KdTree ? "kdtree" : "octree";
    if (frame.codec_id == hsc::CodecId::KdTree) {
      row.q = frame.lattice_bits;
      row.level = frame.compression_level;
    } else {
      row.scale = frame.scale;
    }
    row.compressed_bytes = dec_bytes;
    row.compressed_points = frame.point_count;
    row.bpp = hsc::bpp(dec_bytes, frame.point_count);
    row.bpp_raw = hsc::bpp(dec_bytes, ref.size());
    row.ratio = hsc::compression_ratio(16 * ref.size(), dec_bytes);
  }
  csv << row.line() << '\n';

  if (!raw.empty()) {
    hsc::PointCloud raw_cloud = load_any(raw, nullptr, nullptr);
    CsvRow raw_row = metrics_row(raw_cloud, rec, "vs_raw", common.k);
    raw_row.frame = raw;
    raw_row.raw_bytes = 16 * raw_cloud.size();
    csv << raw_row.line() << '\n';
  }

  if (out_path.empty()) {
    std::fputs(csv.str().c_str(), stdout);
  } else {
    std::string s = csv.str();
    hsc::write_file(out_path, {reinterpret_cast<const uint8_t*>(s.data()), s.size()});
  }
  return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepTask {
  std::string frame_path;
  std::string codec;
  std::string profile;
  int q = 0;
  int level = 7;
  double scale = 0.0;
};

CsvRow run_sweep_task(const SweepTask& task, const hsc::ClassConfig& config, int k,
                      int reps) {
  CsvRow row;
  row.frame = task.frame_path;
  row.codec = task.codec;
  row.profile = task.profile;
  row.comparison = "vs_filtered";
  if (task.codec == "kdtree") {
    row.q = task.q;
    row.level = task.level;
  } else {
    row.scale = task.scale;
  }

  hsc::FilterProfile profile = resolve_profile(task.profile, config);

  Clock::time_point t0 = Clock::now();
  hsc::PointCloud cloud =
      load_scan(task.frame_path, "", !profile.drop_classes.empty());
  row.io_ms = ms_since(t0);
  row.raw_points = cloud.size();
  row.raw_bytes = 16 * cloud.size();

  t0 = Clock::now();
  hsc::FilterOutcome filtered = hsc::filter(cloud, profile);
  row.filter_ms = ms_since(t0);
  row.kept_points = filtered.kept.size();
  if (filtered.kept.empty()) {
    row.status = "error: profile removed every point";
    return row;
  }

  CodecChoice choice{task.codec, task.q, task.level, task.scale};
  std::vector<double> enc_times, dec_times;
  hsc::EncodedFrame frame;
  hsc::PointCloud decoded;
  uint64_t duplicates = 0;
  for (int r = 0; r < std::max(reps, 1); ++r) {
    t0 = Clock::now();
    frame = encode_with(choice, filtered.kept, profile.profile_id, &duplicates);
    enc_times.push_back(ms_since(t0));
    t0 = Clock::now();
    decoded = frame.codec_id == hsc::CodecId::KdTree ? hsc::decode_kdtree(frame)
                                                     : hsc::decode_octree(frame);
    dec_times.push_back(ms_since(t0));
  }
  row.encode_ms = median(enc_times);
  row.decode_ms = median(dec_times);
  if (task.codec == "octree") row.duplicates = duplicates;

  uint64_t bytes = frame.serialized_size();
  row.compressed_bytes = bytes;
  row.compressed_points = frame.point_count;
  row.bpp = hsc::bpp(bytes, frame.point_count);
  row.bpp_raw = hsc::bpp(bytes, cloud.size());
  row.ratio = hsc::compression_ratio(16 * cloud.size(), bytes);
  row.chamfer = hsc::chamfer_sym(filtered.kept, decoded);
  row.chamfer_norm = hsc::chamfer_sym_normalized(filtered.kept, decoded);
  row.psnr_db = psnr_field(hsc::psnr_sym(filtered.kept, decoded, k));
  return row;
}

int cmd_sweep(const std::vector<std::string>& inputs,
              const std::vector<std::string>& codecs, const std::vector<int>& qs,
              const std::vector<double>& scales,
              const std::vector<std::string>& profiles, int level, int k, int reps,
              const CommonOptions& common, const std::string& out_path) {
  const hsc::ClassConfig config = load_classes(common.classes_path);

  std::vector<SweepTask> tasks;
  for (const std::string& frame : inputs)
    for (const std::string& codec : codecs)
      for (const std::string& profile : profiles) {
        if (codec == "kdtree") {
          for (int q : qs) tasks.push_back({frame, codec, profile, q, level, 0.0});
        } else if (codec == "octree") {
          for (double s : scales) tasks.push_back({frame, codec, profile, 0, level, s});
        } else {
          hsc::raise(ErrorKind::InvalidParameter, "unknown codec " + codec);
        }
      }

  std::vector<CsvRow> rows(tasks.size());
  const ptrdiff_t n = static_cast<ptrdiff_t>(tasks.size());
#pragma omp parallel for schedule(dynamic)
  for (ptrdiff_t i = 0; i < n; ++i) {
    try {
      rows[static_cast<size_t>(i)] =
          run_sweep_task(tasks[static_cast<size_t>(i)], config, k, reps);
    } catch (const std::exception& e) {
      CsvRow row;
      row.frame = tasks[static_cast<size_t>(i)].frame_path;
      row.codec = tasks[static_cast<size_t>(i)].codec;
      row.profile = tasks[static_cast<size_t>(i)].profile;
      row.status = std::string("error: ") + e.what();
      rows[static_cast<size_t>(i)] = row;
    }
  }

  std::ostringstream csv;
  csv << kMetricsCsvHeader << '\n';
  for (const CsvRow& row : rows) csv << row.line() << '\n';
  std::string s = csv.str();
  if (out_path.empty()) {
    std::fputs(s.c_str(), stdout);
  } else {
    hsc::write_file(out_path, {reinterpret_cast<const uint8_t*>(s.data()), s.size()});
    std::printf("sweep: %zu rows -> %s\n", rows.size(), out_path.c_str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// synth

int cmd_synth(const hsc::SyntheticSceneSpec& spec, const std::string& out_prefix) {
  hsc::PointCloud cloud = hsc::synth_scene(spec);
  hsc::write_file(out_prefix + ".bin", hsc::save_kitti_bin(cloud));
  hsc::write_file(out_prefix + ".label", hsc::save_kitti_labels(cloud));
  std::printf("synth: %zu points (seed %llu) -> %s.bin / %s.label\n", cloud.size(),
              static_cast<unsigned long long>(spec.seed), out_prefix.c_str(),
              out_prefix.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// stream

int cmd_stream(const std::string& input, const CommonOptions& common,
               const CodecChoice& choice, hsc::StreamConfig scfg,
               const std::string& out_path) {
  const hsc::ClassConfig config = load_classes(common.classes_path);
  hsc::FilterProfile profile = resolve_profile(common.profile_name, config);
  hsc::PointCloud cloud = load_scan(input, common.labels_path, true);

  std::vector<std::pair<int, hsc::EncodedFrame>> tiered;
  for (const auto& [tier, part] : hsc::partition_by_priority(cloud, profile))
    tiered.emplace_back(tier, encode_with(choice, part, profile.profile_id));

  hsc::StreamReport report = hsc::stream_loopback(tiered, scfg);

  std::ostringstream csv;
  csv << "frame_id,tier,bytes,fragments,delivered,end_to_end_ms,decoded_points\n";
  for (const hsc::FrameStreamStats& fs : report.frames) {
    size_t decoded_points = 0;
    if (fs.delivered) {
      const hsc::EncodedFrame& f = report.reassembly.frames.at(fs.frame_id);
      hsc::PointCloud decoded = f.codec_id == hsc::CodecId::KdTree
                                    ? hsc::decode_kdtree(f)
                                    : hsc::decode_octree(f);
      decoded_points = decoded.size();
    }
    csv << fs.frame_id << ',' << fs.tier << ',' << fs.bytes << ',' << fs.fragments
        << ',' << (fs.delivered ? "yes" : "no") << ',' << fmt_num(fs.end_to_end_ms)
        << ',' << decoded_points << '\n';
  }
  std::string s = csv.str();
  if (out_path.empty())
    std::fputs(s.c_str(), stdout);
  else
    hsc::write_file(out_path, {reinterpret_cast<const uint8_t*>(s.data()), s.size()});

  for (const hsc::TierStats& ts : report.tiers)
    std::printf("tier %d first delivery at %.3f ms\n", ts.tier, ts.first_delivery_ms);
  std::printf(
      "stream: %zu frames, %zu packets sent, %zu synthetic drops, %zu received, "
      "%zu frames delivered, %zu lost, %.2f ms total\n",
      report.frames.size(), report.packets_sent, report.packets_dropped,
      report.packets_received, report.reassembly.frames.size(),
      report.reassembly.losses.size(), report.elapsed_ms);
  return 0;
}

int error_exit_code(const Error& e) {
  return e.kind() == ErrorKind::Internal ? 3 : 2;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantic LiDAR point-cloud compression toolkit"};
  app.require_subcommand(1);

  CommonOptions common;
  CodecChoice choice;
  std::string input, out_path;

  // compress
  CLI::App* compress = app.add_subcommand("compress", "Filter and encode a scan");
  compress->add_option("input", input, "KITTI .bin scan")->required();
  compress->add_option("--codec", choice.codec, "kdtree|octree")
      ->check(CLI::IsMember({"kdtree", "octree"}));
  compress->add_option("--q", choice.q, "quantization level 0..14")
      ->check(CLI::Range(0, 14));
  compress->add_option("--level", choice.level, "compression level 0..10")
      ->check(CLI::Range(0, 10));
  compress->add_option("--scale", choice.scale, "octree cells per meter");
  compress->add_option("--profile", common.profile_name, "hsc0|hsc1|hsc2|<file>");
  compress->add_option("--classes", common.classes_path, "class config file");
  compress->add_option("--labels", common.labels_path, "label sidecar path");
  compress->add_option("--out", out_path, "output .hscf path");

  // decompress
  CLI::App* decompress = app.add_subcommand("decompress", "Decode a .hscf frame");
  decompress->add_option("input", input, "input .hscf")->required();
  decompress->add_option("--out", out_path, "output .bin or .ply path");

  // evaluate
  std::string decoded_path, raw_path;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Quality metrics between clouds");
  evaluate->add_option("original", input, "reference cloud (.bin or .hscf)")->required();
  evaluate->add_option("decoded", decoded_path, "reconstruction (.bin or .hscf)")
      ->required();
  evaluate->add_option("--raw", raw_path, "also compare against this raw cloud");
  evaluate->add_option("--k", common.k, "normal estimation neighbors");
  evaluate->add_option("--out", out_path, "CSV output path (default stdout)");

  // sweep
  std::vector<std::string> sweep_inputs, sweep_codecs{"kdtree"}, sweep_profiles{"hsc0"};
  std::vector<int> sweep_qs{10};
  std::vector<double> sweep_scales{100.0};
  int sweep_reps = 1;
  CLI::App* sweep = app.add_subcommand("sweep", "Rate/quality sweep over a corpus");
  sweep->add_option("inputs", sweep_inputs, "KITTI .bin scans (empty list gives a header-only CSV)");
  sweep->add_option("--codec", sweep_codecs, "codecs to run");
  sweep->add_option("--q", sweep_qs, "kd quantization levels")
      ->check(CLI::Range(0, 14));
  sweep->add_option("--scale", sweep_scales, "octree scales");
  sweep->add_option("--profile", sweep_profiles, "profiles to run");
  sweep->add_option("--level", choice.level, "kd compression level")
      ->check(CLI::Range(0, 10));
  sweep->add_option("--k", common.k, "normal estimation neighbors");
  sweep->add_option("--reps", sweep_reps, "timing repetitions per cell");
  sweep->add_option("--classes", common.classes_path, "class config file");
  sweep->add_option("--out", out_path, "CSV output path (default stdout)");

  // synth
  hsc::SyntheticSceneSpec spec;
  std::string synth_out = "scene";
  CLI::App* synth = app.add_subcommand("synth", "Generate a labeled synthetic scene");
  synth->add_option("--seed", spec.seed, "RNG seed");
  synth->add_option("--road", spec.road, "road points");
  synth->add_option("--car", spec.car, "car points");
  synth->add_option("--building", spec.building, "building points");
  synth->add_option("--vegetation", spec.vegetation, "vegetation points");
  synth->add_option("--person", spec.person, "person points");
  synth->add_option("--traffic-sign", spec.traffic_sign, "traffic sign points");
  synth->add_option("--out", synth_out, "output prefix");

  // stream
  hsc::StreamConfig scfg;
  std::string policy = "drop";
  CLI::App* stream = app.add_subcommand("stream", "Loopback UDP streaming check");
  stream->add_option("input", input, "KITTI .bin scan (labels required)")->required();
  stream->add_option("--codec", choice.codec, "kdtree|octree")
      ->check(CLI::IsMember({"kdtree", "octree"}));
  stream->add_option("--q", choice.q, "quantization level")->check(CLI::Range(0, 14));
  stream->add_option("--level", choice.level, "compression level")
      ->check(CLI::Range(0, 10));
  stream->add_option("--scale", choice.scale, "octree cells per meter");
  stream->add_option("--profile", common.profile_name, "hsc0|hsc1|hsc2|<file>");
  stream->add_option("--classes", common.classes_path, "class config file");
  stream->add_option("--labels", common.labels_path, "label sidecar path");
  stream->add_option("--limit", scfg.size_limit, "packet size limit (default 65507)");
  stream->add_option("--drop", scfg.drop_rate, "synthetic fragment drop rate");
  stream->add_option("--drop-seed", scfg.drop_seed, "drop RNG seed");
  stream->add_option("--policy", policy, "drop|partial")
      ->check(CLI::IsMember({"drop", "partial"}));
  stream->add_option("--timeout", scfg.timeout_ms, "receive timeout ms");
  stream->add_option("--out", out_path, "CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1; // usage problems exit 1; --help exits 0
  }

  try {
    if (compress->parsed()) return cmd_compress(input, out_path, common, choice);
    if (decompress->parsed()) return cmd_decompress(input, out_path);
    if (evaluate->parsed())
      return cmd_evaluate(input, decoded_path, raw_path, common, out_path);
    if (sweep->parsed())
      return cmd_sweep(sweep_inputs, sweep_codecs, sweep_qs, sweep_scales,
                       sweep_profiles, choice.level, common.k, sweep_reps, common,
                       out_path);
    if (synth->parsed()) return cmd_synth(spec, synth_out);
    if (stream->parsed()) {
      scfg.loss_policy = policy == "partial" ? hsc::LossPolicy::DeliverPartial
                                             : hsc::LossPolicy::DropFrame;
      return cmd_stream(input, common, choice, scfg, out_path);
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return error_exit_code(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 3;
  }
  return 1;
}
