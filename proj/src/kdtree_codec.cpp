// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#include "hsc/kdtree_codec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "hsc/entropy.hpp"
#include "hsc/error.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hsc {

namespace {

// Round a double bound outward so the f32 lattice box still contains the
// exact value.
float round_down_f32(double v) {
  float f = static_cast<float>(v);
  if (static_cast<double>(f) > v)
    f = std::nextafter(f, -std::numeric_limits<float>::infinity());
  return f;
}

float round_up_f32(double v) {
  float f = static_cast<float>(v);
  if (static_cast<double>(f) < v)
    f = std::nextafter(f, std::numeric_limits<float>::infinity());
  return f;
}

void check_q(int q) {
  if (q < 0 || q > kMaxQuantizationLevel)
    raise(ErrorKind::InvalidParameter,
          "quantization level " + std::to_string(q) + " outside [0,14]");
}

// Entropy context layout for one compression level. Split values are coded
// MSB-first, one binary context per (bit position x depth bucket x count
// bucket) slice; the side flag gets its own context per depth bucket.
// Lower levels collapse dimensions, trading compression for model size
// and adaptation speed.
struct ContextLayout {
  static constexpr uint32_t kBitPositions = 24;
  static constexpr uint32_t kDepthBuckets = 16;
  static constexpr uint32_t kCountBuckets = 16;

  bool by_bit_pos = false;
  bool by_depth = false;
  bool by_count = false;
  uint32_t v_contexts = 1;
  uint32_t side_contexts = 1;

  explicit ContextLayout(int level) {
    by_bit_pos = level >= 1;
    by_depth = level >= 4;
    by_count = level >= 7;
    v_contexts = (by_bit_pos ? kBitPositions : 1) * (by_depth ? kDepthBuckets : 1) *
                 (by_count ? kCountBuckets : 1);
    side_contexts = by_depth ? kDepthBuckets : 1;
  }

  uint32_t v_ctx(int bit_pos, int depth, uint64_t n_total) const {
    uint32_t id = 0;
    if (by_bit_pos) id = std::min<uint32_t>(static_cast<uint32_t>(bit_pos), kBitPositions - 1);
    if (by_depth)
      id = id * kDepthBuckets +
           std::min<uint32_t>(static_cast<uint32_t>(depth), kDepthBuckets - 1);
    if (by_count)
      id = id * kCountBuckets +
           std::min<uint32_t>(static_cast<uint32_t>(std::bit_width(n_total)) - 1,
                              kCountBuckets - 1);
    return id;
  }

  uint32_t side_ctx(int depth) const {
    uint32_t base = v_contexts;
    if (!by_depth) return base;
    return base + std::min<uint32_t>(static_cast<uint32_t>(depth), kDepthBuckets - 1);
  }

  AdaptiveModel make_model() const {
    std::vector<uint32_t> alphabets(v_contexts + side_contexts, 2);
    return AdaptiveModel(alphabets);
  }
};

struct Box {
  std::array<uint32_t, 3> lo{0, 0, 0};
  std::array<uint32_t, 3> hi{1, 1, 1}; // exclusive

  uint32_t width(int a) const { return hi[static_cast<size_t>(a)] - lo[static_cast<size_t>(a)]; }
  bool single_voxel() const { return width(0) == 1 && width(1) == 1 && width(2) == 1; }
};

// Preferred axis is depth mod 3; axes that cannot split (width 1, which
// includes degenerate lattice axes) are skipped in rotation.
int split_axis(const Box& box, int depth) {
  for (int k = 0; k < 3; ++k) {
    int a = (depth + k) % 3;
    if (box.width(a) > 1) return a;
  }
  return -1;
}

using Cell = std::array<uint32_t, 3>;

class KdEncoder {
public:
  KdEncoder(std::vector<Cell>& cells, const ContextLayout& layout)
      : cells_(cells), layout_(layout), model_(layout.make_model()) {}

  std::vector<uint8_t> run(const Box& root) {
    if (!cells_.empty()) encode_node(root, 0, cells_.size(), 0);
    return enc_.finish();
  }

private:
  void emit_value(uint32_t v, int nbits, int depth, uint64_t n) {
    for (int i = nbits - 1; i >= 0; --i)
      model_.encode_symbol(enc_, layout_.v_ctx(i, depth, n), (v >> i) & 1u);
  }

  void emit_side(bool low_is_smaller, int depth) {
    model_.encode_symbol(enc_, layout_.side_ctx(depth), low_is_smaller ? 1u : 0u);
  }

  // Single remaining point: each level's side flag is the next coordinate
  // bit, so descend without partitioning.
  void encode_single(Box box, const Cell& cell, int depth) {
    while (!box.single_voxel()) {
      int a = split_axis(box, depth);
      uint32_t mid = box.lo[static_cast<size_t>(a)] + box.width(a) / 2;
      bool in_high = cell[static_cast<size_t>(a)] >= mid;
      emit_side(in_high, depth); // n_low == 0 iff the low half is smaller
      if (in_high)
        box.lo[static_cast<size_t>(a)] = mid;
      else
        box.hi[static_cast<size_t>(a)] = mid;
      ++depth;
    }
  }

  void encode_node(const Box& box, size_t begin, size_t end, int depth) {
    const uint64_t n = end - begin;
    if (box.single_voxel()) return; // multiplicity implied by parent count
    if (n == 1) {
      encode_single(box, cells_[begin], depth);
      return;
    }

    int a = split_axis(box, depth);
    uint32_t mid = box.lo[static_cast<size_t>(a)] + box.width(a) / 2;
    auto mid_it = std::partition(
        cells_.begin() + static_cast<ptrdiff_t>(begin),
        cells_.begin() + static_cast<ptrdiff_t>(end),
        [a, mid](const Cell& c) { return c[static_cast<size_t>(a)] < mid; });
    size_t split = static_cast<size_t>(mid_it - cells_.begin());
    uint64_t n_low = split - begin;

    SplitCode code = split_code(n, n_low);
    emit_value(code.value, split_value_bits(n), depth, n);
    if (code.low_is_smaller) emit_side(*code.low_is_smaller, depth);

    Box low = box;
    low.hi[static_cast<size_t>(a)] = mid;
    Box high = box;
    high.lo[static_cast<size_t>(a)] = mid;
    if (n_low > 0) encode_node(low, begin, split, depth + 1);
    if (n - n_low > 0) encode_node(high, split, end, depth + 1);
  }

  std::vector<Cell>& cells_;
  const ContextLayout& layout_;
  AdaptiveModel model_;
  RangeEncoder enc_;
};

class KdDecoder {
public:
  KdDecoder(std::span<const uint8_t> payload, const ContextLayout& layout,
            const QuantizationParams& params, size_t point_count)
      : dec_(payload), layout_(layout), model_(layout.make_model()),
        params_(params) {
    out_.reserve(point_count);
  }

  std::vector<Vec3> run(const Box& root, uint64_t n) {
    if (n > 0) decode_node(root, n, 0);
    return std::move(out_);
  }

private:
  uint32_t read_value(int nbits, int depth, uint64_t n) {
    uint32_t v = 0;
    for (int i = nbits - 1; i >= 0; --i)
      v |= model_.decode_symbol(dec_, layout_.v_ctx(i, depth, n)) << i;
    return v;
  }

  bool read_side(int depth) {
    return model_.decode_symbol(dec_, layout_.side_ctx(depth)) != 0;
  }

  void emit_leaf(const Box& box, uint64_t n) {
    Vec3 center = params_.cell_center(box.lo);
    for (uint64_t i = 0; i < n; ++i) out_.push_back(center);
  }

  void decode_single(Box box, int depth) {
    while (!box.single_voxel()) {
      int a = split_axis(box, depth);
      uint32_t mid = box.lo[static_cast<size_t>(a)] + box.width(a) / 2;
      if (read_side(depth))
        box.lo[static_cast<size_t>(a)] = mid;
      else
        box.hi[static_cast<size_t>(a)] = mid;
      ++depth;
    }
    emit_leaf(box, 1);
  }

  void decode_node(const Box& box, uint64_t n, int depth) {
    if (box.single_voxel()) {
      emit_leaf(box, n);
      return;
    }
    if (n == 1) {
      decode_single(box, depth);
      return;
    }

    int a = split_axis(box, depth);
    uint32_t mid = box.lo[static_cast<size_t>(a)] + box.width(a) / 2;

    uint32_t v = read_value(split_value_bits(n), depth, n);
    if (v > n / 2)
      raise(ErrorKind::Corruption, "split value exceeds parent count range");
    uint64_t smaller = n / 2 - v;
    uint64_t n_low;
    if (smaller == n - smaller)
      n_low = smaller;
    else
      n_low = read_side(depth) ? smaller : n - smaller;

    Box low = box;
    low.hi[static_cast<size_t>(a)] = mid;
    Box high = box;
    high.lo[static_cast<size_t>(a)] = mid;
    if (n_low > 0) decode_node(low, n_low, depth + 1);
    if (n - n_low > 0) decode_node(high, n - n_low, depth + 1);
  }

  RangeDecoder dec_;
  const ContextLayout& layout_;
  AdaptiveModel model_;
  const QuantizationParams& params_;
  std::vector<Vec3> out_;
};

} // namespace

QuantizationParams QuantizationParams::from_cloud(const PointCloud& cloud, int q) {
  check_q(q);
  BoundingBox box = bounding_box(cloud); // raises on empty input
  std::array<float, 6> f32{};
  for (int a = 0; a < 3; ++a) {
    f32[static_cast<size_t>(a)] = round_down_f32(box.min[a]);
    f32[static_cast<size_t>(a) + 3] = round_up_f32(box.max[a]);
  }
  return from_bbox(f32, q);
}

QuantizationParams QuantizationParams::from_bbox(const std::array<float, 6>& bbox_f32,
                                                 int q) {
  check_q(q);
  QuantizationParams p;
  p.q = q;
  p.lattice_bbox = bbox_f32;
  uint32_t n = 1u << q;
  for (int a = 0; a < 3; ++a) {
    double lo = bbox_f32[static_cast<size_t>(a)];
    double hi = bbox_f32[static_cast<size_t>(a) + 3];
    if (!(hi >= lo))
      raise(ErrorKind::InvalidParameter, "inverted lattice bounding box");
    p.origin[a] = lo;
    double extent = hi - lo;
    if (extent > 0.0) {
      p.cells[static_cast<size_t>(a)] = n;
      p.step[a] = extent / static_cast<double>(n);
    } else {
      p.cells[static_cast<size_t>(a)] = 1;
      p.step[a] = 0.0;
    }
  }
  return p;
}

Vec3 QuantizationParams::cell_center(const std::array<uint32_t, 3>& cell) const {
  Vec3 c;
  for (int a = 0; a < 3; ++a)
    c[a] = origin[a] + (static_cast<double>(cell[static_cast<size_t>(a)]) + 0.5) * step[a];
  return c;
}

QuantizedCloud quantize(const PointCloud& cloud, int q) {
  QuantizedCloud qc;
  qc.params = QuantizationParams::from_cloud(cloud, q);
  qc.cells.resize(cloud.size());
  const QuantizationParams& p = qc.params;
  const ptrdiff_t n = static_cast<ptrdiff_t>(cloud.size());
#pragma omp parallel for schedule(static)
  for (ptrdiff_t i = 0; i < n; ++i) {
    const Vec3& pt = cloud.points[static_cast<size_t>(i)];
    Cell cell{0, 0, 0};
    for (int a = 0; a < 3; ++a) {
      if (p.step[a] == 0.0) continue;
      double t = std::floor((pt[a] - p.origin[a]) / p.step[a]);
      double limit = static_cast<double>(p.cells[static_cast<size_t>(a)] - 1);
      cell[static_cast<size_t>(a)] =
          static_cast<uint32_t>(std::clamp(t, 0.0, limit));
    }
    qc.cells[static_cast<size_t>(i)] = cell;
  }
  return qc;
}

PointCloud dequantize(const QuantizedCloud& qc) {
  PointCloud out;
  out.points.resize(qc.size());
  const ptrdiff_t n = static_cast<ptrdiff_t>(qc.size());
#pragma omp parallel for schedule(static)
  for (ptrdiff_t i = 0; i < n; ++i)
    out.points[static_cast<size_t>(i)] =
        qc.params.cell_center(qc.cells[static_cast<size_t>(i)]);
  return out;
}

SplitCode split_code(uint64_t n_total, uint64_t n_low) {
  if (n_low > n_total)
    raise(ErrorKind::ContractViolation, "split_code: n_low exceeds n_total");
  uint64_t n_high = n_total - n_low;
  SplitCode code;
  code.value = static_cast<uint32_t>(n_total / 2 - std::min(n_low, n_high));
  if (n_low != n_high) code.low_is_smaller = n_low < n_high;
  return code;
}

uint64_t split_decode(uint64_t n_total, uint32_t value,
                      std::optional<bool> low_is_smaller) {
  if (value > n_total / 2)
    raise(ErrorKind::ContractViolation, "split_decode: value out of range");
  uint64_t smaller = n_total / 2 - value;
  uint64_t larger = n_total - smaller;
  if (!low_is_smaller) {
    if (smaller != larger)
      raise(ErrorKind::ContractViolation,
            "split_decode: unbalanced split needs a side flag");
    return smaller;
  }
  return *low_is_smaller ? smaller : larger;
}

int split_value_bits(uint64_t n_total) {
  return static_cast<int>(std::bit_width(n_total / 2));
}

EncodedFrame encode_kdtree(const QuantizedCloud& qc, int compression_level,
                           uint8_t profile_id) {
  if (qc.cells.empty())
    raise(ErrorKind::EmptyInput, "encode_kdtree: empty cloud");
  if (qc.size() > std::numeric_limits<uint32_t>::max())
    raise(ErrorKind::InvalidParameter, "encode_kdtree: cloud exceeds u32 point count");
  if (compression_level < 0 || compression_level > kMaxCompressionLevel)
    raise(ErrorKind::InvalidParameter,
          "compression level " + std::to_string(compression_level) +
              " outside [0,10]");

  ContextLayout layout(compression_level);
  std::vector<Cell> cells = qc.cells; // encoder permutes its working copy
  Box root;
  root.hi = qc.params.cells;
  KdEncoder encoder(cells, layout);

  EncodedFrame frame;
  frame.codec_id = CodecId::KdTree;
  frame.lattice_bits = static_cast<uint8_t>(qc.params.q);
  frame.profile_id = profile_id;
  frame.point_count = static_cast<uint32_t>(qc.size());
  frame.bbox = qc.params.lattice_bbox;
  frame.compression_level = static_cast<uint8_t>(compression_level);
  frame.payload = encoder.run(root);
  return frame;
}

EncodedFrame encode_kdtree(const PointCloud& cloud, int q, int compression_level,
                           uint8_t profile_id) {
  return encode_kdtree(quantize(cloud, q), compression_level, profile_id);
}

PointCloud decode_kdtree(const EncodedFrame& frame) {
  if (frame.codec_id != CodecId::KdTree)
    raise(ErrorKind::Format, "decode_kdtree: frame holds a different codec");
  if (frame.lattice_bits > kMaxQuantizationLevel)
    raise(ErrorKind::Format, "decode_kdtree: invalid quantization level");
  if (frame.compression_level > kMaxCompressionLevel)
    raise(ErrorKind::Format, "decode_kdtree: invalid compression level");

  QuantizationParams params =
      QuantizationParams::from_bbox(frame.bbox, frame.lattice_bits);
  ContextLayout layout(frame.compression_level);
  KdDecoder decoder(frame.payload, layout, params, frame.point_count);
  Box root;
  root.hi = params.cells;

  PointCloud out;
  try {
    out.points = decoder.run(root, frame.point_count);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DecodeUnderrun)
      raise(ErrorKind::Corruption, std::string("frame payload underrun: ") + e.what());
    throw;
  }
  if (out.points.size() != frame.point_count)
    raise(ErrorKind::Corruption, "decoded point count mismatch");
  return out;
}

} // namespace hsc
