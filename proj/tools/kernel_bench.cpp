// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0
//
// Kernel benchmark: serial O(N^2) reference implementations vs the indexed
// OpenMP fast paths, plus codec throughput. Median and p95 over repeated
// runs, one CSV row per kernel/configuration.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hsc/kdtree_codec.hpp"
#include "hsc/metrics.hpp"
#include "hsc/octree_codec.hpp"
#include "hsc/reference.hpp"
#include "hsc/synth.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

double time_once(const std::function<void()>& fn) {
  Clock::time_point t0 = Clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Stats {
  double median_ms = 0.0;
  double p95_ms = 0.0;
};

Stats run(const std::function<void()>& fn, int reps) {
  std::vector<double> times;
  times.reserve(static_cast<size_t>(reps));
  for (int i = 0; i < reps; ++i) times.push_back(time_once(fn));
  std::sort(times.begin(), times.end());
  Stats s;
  size_t mid = times.size() / 2;
  s.median_ms = times.size() % 2 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
  size_t p95 = static_cast<size_t>(std::ceil(0.95 * static_cast<double>(times.size())));
  s.p95_ms = times[std::min(p95 == 0 ? 0 : p95 - 1, times.size() - 1)];
  return s;
}

int threads_now() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
  omp_set_num_threads(n);
#else
  (void)n;
#endif
}

void report(const char* kernel, const char* variant, int threads, size_t n,
            const Stats& s, double checksum) {
  std::printf("%s,%s,%d,%zu,%.3f,%.3f,%.6g\n", kernel, variant, threads, n,
              s.median_ms, s.p95_ms, checksum);
}

} // namespace

int main(int argc, char** argv) {
  size_t n_small = 2000;   // serial reference is quadratic; keep it honest
  size_t n_large = 120000; // LiDAR frame scale for the fast paths
  int reps = 50;
  if (argc > 1) n_large = static_cast<size_t>(std::stoull(argv[1]));
  if (argc > 2) reps = std::stoi(argv[2]);

  const int max_threads = threads_now();

  hsc::SyntheticSceneSpec small_spec;
  small_spec.seed = 42;
  small_spec.road = n_small / 2;
  small_spec.car = n_small / 4;
  small_spec.building = n_small - small_spec.road - small_spec.car;
  hsc::PointCloud small_a = hsc::synth_scene(small_spec);
  small_spec.seed = 43;
  hsc::PointCloud small_b = hsc::synth_scene(small_spec);

  hsc::SyntheticSceneSpec large_spec;
  large_spec.seed = 7;
  large_spec.road = n_large / 2;
  large_spec.building = n_large / 4;
  large_spec.vegetation = n_large / 8;
  large_spec.car = n_large / 16;
  large_spec.person = n_large / 32;
  large_spec.traffic_sign =
      n_large - large_spec.road - large_spec.building - large_spec.vegetation -
      large_spec.car - large_spec.person;
  hsc::PointCloud large = hsc::synth_scene(large_spec);
  hsc::PointCloud large_rec = hsc::decode_kdtree(hsc::encode_kdtree(large, 11, 7));

  std::printf("kernel,variant,threads,points,median_ms,p95_ms,checksum\n");

  // chamfer: serial brute force vs indexed at 1..max threads.
  {
    double ref = 0.0;
    Stats s = run([&] { ref = hsc::reference::chamfer_sym(small_a, small_b); }, 5);
    report("chamfer", "reference_serial", 1, n_small, s, ref);
    for (int t = 1; t <= max_threads; t *= 2) {
      set_threads(t);
      double fast = 0.0;
      Stats f = run([&] { fast = hsc::chamfer_sym(small_a, small_b); }, reps);
      report("chamfer", "indexed", t, n_small, f, fast);
    }
    set_threads(max_threads);
    double fast_large = 0.0;
    Stats f = run([&] { fast_large = hsc::chamfer_sym(large, large_rec); },
                  std::max(reps / 10, 3));
    report("chamfer", "indexed", max_threads, n_large, f, fast_large);
  }

  // intrinsic peak.
  {
    double ref = 0.0;
    Stats s = run([&] { ref = hsc::reference::intrinsic_peak(small_a); }, 5);
    report("intrinsic_peak", "reference_serial", 1, n_small, s, ref);
    for (int t = 1; t <= max_threads; t *= 2) {
      set_threads(t);
      double fast = 0.0;
      Stats f = run([&] { fast = hsc::intrinsic_peak(small_a); }, reps);
      report("intrinsic_peak", "indexed", t, n_small, f, fast);
    }
  }

  // normal estimation.
  {
    double checksum = 0.0;
    Stats s = run(
        [&] {
          hsc::NormalField nf = hsc::reference::estimate_normals(small_a, 16);
          checksum = std::abs(nf.normals[0].z);
        },
        3);
    report("normals", "reference_serial", 1, n_small, s, checksum);
    for (int t = 1; t <= max_threads; t *= 2) {
      set_threads(t);
      Stats f = run(
          [&] {
            hsc::NormalField nf = hsc::estimate_normals(small_a, 16);
            checksum = std::abs(nf.normals[0].z);
          },
          reps);
      report("normals", "indexed", t, n_small, f, checksum);
    }
  }

  // codec throughput at frame scale (serial by design; frame-level
  // parallelism lives in the sweep driver).
  {
    set_threads(max_threads);
    hsc::EncodedFrame frame;
    Stats enc = run([&] { frame = hsc::encode_kdtree(large, 11, 7); }, reps);
    report("kdtree_encode_q11", "codec", 1, large.size(), enc,
           static_cast<double>(frame.payload.size()));
    Stats dec = run([&] { hsc::PointCloud c = hsc::decode_kdtree(frame); }, reps);
    report("kdtree_decode_q11", "codec", 1, large.size(), dec,
           static_cast<double>(frame.point_count));

    hsc::VoxelizedCloud vc = hsc::voxelize(large, 100.0);
    hsc::EncodedFrame oframe;
    Stats oenc = run([&] { oframe = hsc::encode_octree(vc); }, std::max(reps / 5, 3));
    report("octree_encode_s100", "codec", 1, large.size(), oenc,
           static_cast<double>(oframe.payload.size()));
    Stats odec =
        run([&] { hsc::PointCloud c = hsc::decode_octree(oframe); }, std::max(reps / 5, 3));
    report("octree_decode_s100", "codec", 1, large.size(), odec,
           static_cast<double>(oframe.point_count));
  }

  return 0;
}
