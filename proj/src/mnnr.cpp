// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#include "coopgeo/mnnr.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "coopgeo/error.hpp"
#include "coopgeo/kdtree.hpp"

namespace coopgeo {
namespace {

[[noreturn]] void throw_tie(std::size_t i) {
  throw ValidationError("nearest neighbor of atom " + std::to_string(i) +
                        " is tied; tie violates uniqueness");
}

bool tied(double best, double second) {
  return second - best <= kTieRelTol * best;
}

std::size_t scan_nearest(std::span<const Point2> pts, std::size_t i) {
  double best = std::numeric_limits<double>::infinity();
  double second = best;
  std::size_t arg = 0;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (j == i) continue;
    const double d2 = (pts[j] - pts[i]).norm2();
    if (d2 < best) {
      second = best;
      best = d2;
      arg = j;
    } else if (d2 < second) {
      second = d2;
    }
  }
  if (tied(best, second)) throw_tie(i);
  return arg;
}

Partition build_partition(const std::vector<std::size_t>& nn) {
  Partition p;
  const std::size_t n = nn.size();
  p.partner.assign(n, Partition::kNone);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = nn[i];
    if (nn[j] == i) {
      p.partner[i] = static_cast<std::ptrdiff_t>(j);
      if (i < j) p.pairs.emplace_back(i, j);
    } else {
      p.singles.push_back(i);
    }
  }
  return p;
}

}  // namespace

std::size_t nearest_neighbor(const Configuration& config, std::size_t i) {
  if (config.atoms.size() < 2) {
    throw ValidationError("nearest_neighbor: need at least two atoms");
  }
  if (i >= config.atoms.size()) {
    throw ValidationError("nearest_neighbor: index out of range");
  }
  return scan_nearest(config.atoms, i);
}

std::vector<std::size_t> nearest_neighbors(const Configuration& config) {
  const std::size_t n = config.atoms.size();
  if (n < 2) throw ValidationError("nearest_neighbors: need at least two atoms");
  std::vector<std::size_t> nn(n);
  if (n == 2) {
    nn = {1, 0};
    return nn;
  }
  const KdTree tree(config.atoms);
  for (std::size_t i = 0; i < n; ++i) {
    const KdTree::Neighbor nb = tree.nearest(config.atoms[i], i);
    if (tied(nb.dist2, nb.second_dist2)) throw_tie(i);
    nn[i] = nb.index;
  }
  return nn;
}

Partition mnnr_partition(const Configuration& config) {
  if (config.atoms.size() < 2) {
    Partition p;
    p.partner.assign(config.atoms.size(), Partition::kNone);
    for (std::size_t i = 0; i < config.atoms.size(); ++i) p.singles.push_back(i);
    return p;
  }
  return build_partition(nearest_neighbors(config));
}

Indicators indicator_vectors(std::span<const Point2> points) {
  const std::size_t n = points.size();
  Indicators out;
  out.pair.assign(n, 0);
  out.single.assign(n, 1);
  if (n < 2) return out;
  // v(i) = argmin over row i of the distance matrix, diagonal excluded.
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = scan_nearest(points, i);
  for (std::size_t i = 0; i < n; ++i) {
    out.pair[i] = v[v[i]] == i ? 1 : 0;
    out.single[i] = 1 - out.pair[i];
  }
  return out;
}

Partition partition_from_indicators(std::span<const Point2> points) {
  const std::size_t n = points.size();
  std::vector<std::size_t> v(n);
  if (n < 2) {
    Configuration c;
    c.atoms.assign(points.begin(), points.end());
    return mnnr_partition(c);
  }
  for (std::size_t i = 0; i < n; ++i) v[i] = scan_nearest(points, i);
  return build_partition(v);
}

double default_margin(double lambda) {
  if (!(lambda > 0)) throw ValidationError("default_margin: intensity must be positive");
  return 3 / std::sqrt(lambda);
}

std::size_t InteriorMask::count() const {
  return static_cast<std::size_t>(std::accumulate(interior.begin(), interior.end(), std::size_t{0}));
}

InteriorMask interior_mask(const Configuration& config, double margin) {
  if (!(margin >= 0)) throw ValidationError("interior_mask: margin must be nonnegative");
  InteriorMask m;
  m.margin = margin;
  m.interior.resize(config.atoms.size());
  for (std::size_t i = 0; i < config.atoms.size(); ++i) {
    m.interior[i] = config.window.boundary_distance(config.atoms[i]) >= margin;
  }
  return m;
}

}  // namespace coopgeo
