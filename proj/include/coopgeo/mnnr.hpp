// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "coopgeo/pointproc.hpp"

namespace coopgeo {

//! Relative gap below which two neighbor distances count as tied.
inline constexpr double kTieRelTol = 1e-12;

//! Nearest other atom to atom i, by exhaustive scan.
//! Throws ValidationError for fewer than two atoms or a tied minimum.
std::size_t nearest_neighbor(const Configuration& config, std::size_t i);

//! Nearest neighbor of every atom via a kd-tree; same error contract.
std::vector<std::size_t> nearest_neighbors(const Configuration& config);

//! Singles and mutually-nearest pairs of a configuration.
struct Partition {
  static constexpr std::ptrdiff_t kNone = -1;

  std::vector<std::size_t> singles;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // first < second
  std::vector<std::ptrdiff_t> partner;                     // kNone if single

  std::size_t size() const { return partner.size(); }
  bool is_paired(std::size_t i) const { return partner[i] != kNone; }
};

//! Partition by kd-tree nearest neighbors. Configurations with fewer than
//! two atoms have only singles.
Partition mnnr_partition(const Configuration& config);

//! Pair and single indicator vectors by direct search over the full
//! distance matrix; independent of the kd-tree path.
struct Indicators {
  std::vector<std::uint8_t> pair;
  std::vector<std::uint8_t> single;
};
Indicators indicator_vectors(std::span<const Point2> points);

Partition partition_from_indicators(std::span<const Point2> points);

//! Default edge margin: three typical nearest-neighbor distances.
double default_margin(double lambda);

struct InteriorMask {
  double margin = 0;
  std::vector<std::uint8_t> interior;

  std::size_t count() const;
  bool operator[](std::size_t i) const { return interior[i] != 0; }
};

InteriorMask interior_mask(const Configuration& config, double margin);

}  // namespace coopgeo
