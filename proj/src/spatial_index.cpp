// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#include "hsc/spatial_index.hpp"

#include <algorithm>
#include <numeric>

#include "hsc/error.hpp"

namespace hsc {

SpatialIndex::SpatialIndex(std::span<const Vec3> points)
    : points_(points.begin(), points.end()) {
  ids_.resize(points_.size());
  std::iota(ids_.begin(), ids_.end(), 0u);
  nodes_.reserve(points_.size() / kLeafSize * 2 + 2);
  if (!points_.empty()) root_ = build(0, static_cast<uint32_t>(points_.size()));
}

uint32_t SpatialIndex::build(uint32_t begin, uint32_t end) {
  uint32_t id = static_cast<uint32_t>(nodes_.size());
  nodes_.emplace_back();
  if (end - begin <= kLeafSize) {
    nodes_[id] = {-1, 0.0, begin, end};
    return id;
  }

  // Split on the axis with the widest spread, at the median point.
  Vec3 lo = points_[ids_[begin]];
  Vec3 hi = lo;
  for (uint32_t i = begin; i < end; ++i) {
    const Vec3& p = points_[ids_[i]];
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::min(lo[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
  }
  int axis = 0;
  for (int a = 1; a < 3; ++a)
    if (hi[a] - lo[a] > hi[axis] - lo[axis]) axis = a;

  uint32_t mid = begin + (end - begin) / 2;
  std::nth_element(ids_.begin() + begin, ids_.begin() + mid, ids_.begin() + end,
                   [this, axis](uint32_t a, uint32_t b) {
                     return points_[a][axis] < points_[b][axis];
                   });
  double split = points_[ids_[mid]][axis];

  uint32_t left = build(begin, mid);
  uint32_t right = build(mid, end);
  nodes_[id] = {axis, split, left, right};
  return id;
}

void SpatialIndex::nearest_walk(uint32_t node, const Vec3& query,
                                std::optional<size_t> exclude, Hit& best) const {
  const Node& n = nodes_[node];
  if (n.axis < 0) {
    for (uint32_t i = n.left; i < n.right; ++i) {
      size_t idx = ids_[i];
      if (exclude && idx == *exclude) continue;
      double d = squared_distance(points_[idx], query);
      if (d < best.sq_dist) best = {idx, d};
    }
    return;
  }
  double delta = query[n.axis] - n.split;
  uint32_t near = delta < 0.0 ? n.left : n.right;
  uint32_t far = delta < 0.0 ? n.right : n.left;
  nearest_walk(near, query, exclude, best);
  if (delta * delta <= best.sq_dist) nearest_walk(far, query, exclude, best);
}

SpatialIndex::Hit SpatialIndex::nearest(const Vec3& query,
                                        std::optional<size_t> exclude) const {
  if (points_.empty() || (points_.size() == 1 && exclude))
    raise(ErrorKind::EmptyInput, "nearest: no eligible points");
  Hit best;
  nearest_walk(root_, query, exclude, best);
  return best;
}

void SpatialIndex::k_walk(uint32_t node, const Vec3& query, size_t k,
                          std::vector<std::pair<double, size_t>>& heap) const {
  const Node& n = nodes_[node];
  if (n.axis < 0) {
    for (uint32_t i = n.left; i < n.right; ++i) {
      size_t idx = ids_[i];
      double d = squared_distance(points_[idx], query);
      if (heap.size() < k) {
        heap.emplace_back(d, idx);
        std::push_heap(heap.begin(), heap.end());
      } else if (d < heap.front().first) {
        std::pop_heap(heap.begin(), heap.end());
        heap.back() = {d, idx};
        std::push_heap(heap.begin(), heap.end());
      }
    }
    return;
  }
  double delta = query[n.axis] - n.split;
  uint32_t near = delta < 0.0 ? n.left : n.right;
  uint32_t far = delta < 0.0 ? n.right : n.left;
  k_walk(near, query, k, heap);
  if (heap.size() < k || delta * delta <= heap.front().first)
    k_walk(far, query, k, heap);
}

void SpatialIndex::k_nearest(const Vec3& query, size_t k,
                             std::vector<size_t>& out) const {
  if (k == 0 || k > points_.size())
    raise(ErrorKind::InsufficientPoints,
          "k_nearest: k = " + std::to_string(k) + " with " +
              std::to_string(points_.size()) + " points");
  std::vector<std::pair<double, size_t>> heap;
  heap.reserve(k);
  k_walk(root_, query, k, heap);
  std::sort_heap(heap.begin(), heap.end());
  out.clear();
  out.reserve(heap.size());
  for (const auto& [d, idx] : heap) out.push_back(idx);
}

} // namespace hsc
