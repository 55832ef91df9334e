// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "coopgeo/geometry.hpp"

namespace coopgeo {

//! Static 2-d tree answering nearest and second-nearest queries.
class KdTree {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  struct Neighbor {
    std::size_t index = npos;
    double dist2 = std::numeric_limits<double>::infinity();
    //! Squared distance of the runner-up; used for tie detection.
    double second_dist2 = std::numeric_limits<double>::infinity();
  };

  KdTree() = default;
  explicit KdTree(std::span<const Point2> points);

  std::size_t size() const { return pts_.size(); }

  //! Nearest point to q among the stored points, skipping index `skip`.
  Neighbor nearest(Point2 q, std::size_t skip = npos) const;

 private:
  struct Node {
    std::uint32_t lo, hi;         // range in pts_ / ids_
    std::int32_t left = -1, right = -1;
    std::uint8_t axis = 0;
    double split = 0;
  };

  std::int32_t build(std::uint32_t lo, std::uint32_t hi);
  void search(std::int32_t node, Point2 q, std::size_t skip, Neighbor& best) const;

  std::vector<Point2> pts_;
  std::vector<std::uint32_t> ids_;
  std::vector<Node> nodes_;
};

}  // namespace coopgeo
