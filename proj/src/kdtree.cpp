// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#include "coopgeo/kdtree.hpp"

#include <algorithm>
#include <numeric>

#include "coopgeo/error.hpp"

namespace coopgeo {
namespace {
constexpr std::uint32_t kLeafSize = 8;
}

KdTree::KdTree(std::span<const Point2> points) {
  if (points.size() >= std::numeric_limits<std::uint32_t>::max()) {
    throw ValidationError("KdTree: too many points");
  }
  ids_.resize(points.size());
  std::iota(ids_.begin(), ids_.end(), 0u);
  pts_.assign(points.begin(), points.end());
  nodes_.reserve(2 * points.size() / kLeafSize + 2);
  if (!points.empty()) build(0, static_cast<std::uint32_t>(points.size()));
  std::vector<Point2> ordered(pts_.size());
  for (std::size_t k = 0; k < ids_.size(); ++k) ordered[k] = points[ids_[k]];
  pts_ = std::move(ordered);
}

std::int32_t KdTree::build(std::uint32_t lo, std::uint32_t hi) {
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(Node{lo, hi});
  if (hi - lo <= kLeafSize) return id;

  double x0 = pts_[ids_[lo]].x, x1 = x0, y0 = pts_[ids_[lo]].y, y1 = y0;
  for (std::uint32_t k = lo; k < hi; ++k) {
    const Point2& p = pts_[ids_[k]];
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  const std::uint8_t axis = (x1 - x0) >= (y1 - y0) ? 0 : 1;
  const std::uint32_t mid = lo + (hi - lo) / 2;
  auto key = [&](std::uint32_t i) { return axis == 0 ? pts_[i].x : pts_[i].y; };
  std::nth_element(ids_.begin() + lo, ids_.begin() + mid, ids_.begin() + hi,
                   [&](std::uint32_t a, std::uint32_t b) { return key(a) < key(b); });
  const double split = key(ids_[mid]);
  const std::int32_t left = build(lo, mid);
  const std::int32_t right = build(mid, hi);
  Node& n = nodes_[id];
  n.axis = axis;
  n.split = split;
  n.left = left;
  n.right = right;
  return id;
}

void KdTree::search(std::int32_t node_id, Point2 q, std::size_t skip,
                    Neighbor& best) const {
  const Node& n = nodes_[node_id];
  if (n.left < 0) {
    for (std::uint32_t k = n.lo; k < n.hi; ++k) {
      if (ids_[k] == skip) continue;
      const double d2 = (pts_[k] - q).norm2();
      if (d2 < best.dist2) {
        best.second_dist2 = best.dist2;
        best.dist2 = d2;
        best.index = ids_[k];
      } else if (d2 < best.second_dist2) {
        best.second_dist2 = d2;
      }
    }
    return;
  }
  const double diff = (n.axis == 0 ? q.x : q.y) - n.split;
  const std::int32_t near = diff < 0 ? n.left : n.right;
  const std::int32_t far = diff < 0 ? n.right : n.left;
  search(near, q, skip, best);
  if (diff * diff <= best.second_dist2) search(far, q, skip, best);
}

KdTree::Neighbor KdTree::nearest(Point2 q, std::size_t skip) const {
  Neighbor best;
  if (!nodes_.empty()) search(0, q, skip, best);
  return best;
}

}  // namespace coopgeo
