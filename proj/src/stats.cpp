// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#include "coopgeo/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/poisson.hpp>

#include "coopgeo/error.hpp"
#include "coopgeo/kdtree.hpp"

namespace coopgeo {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Point2> role_atoms(const Configuration& config,
                               const Partition& partition, Role role) {
  std::vector<Point2> out;
  for (std::size_t i = 0; i < config.atoms.size(); ++i) {
    if (partition.is_paired(i) == (role == Role::paired)) {
      out.push_back(config.atoms[i]);
    }
  }
  return out;
}

void check_sizes(const Configuration& c, const Partition& p) {
  if (c.atoms.size() != p.size()) {
    throw ValidationError("partition does not match configuration");
  }
}

}  // namespace

void MeanAccumulator::add(double x) {
  ++n_;
  const double d = x - mean_;
  mean_ += d / static_cast<double>(n_);
  m2_ += d * (x - mean_);
}

void MeanAccumulator::merge(const MeanAccumulator& o) {
  if (o.n_ == 0) return;
  const double n = static_cast<double>(n_ + o.n_);
  const double d = o.mean_ - mean_;
  m2_ += o.m2_ + d * d * static_cast<double>(n_) * static_cast<double>(o.n_) / n;
  mean_ += d * static_cast<double>(o.n_) / n;
  n_ += o.n_;
}

double MeanAccumulator::variance() const {
  return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
}

double MeanAccumulator::stderr_of_mean() const {
  return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
}

Estimate make_estimate(const MeanAccumulator& acc, std::uint64_t seed) {
  return {acc.mean(), acc.stderr_of_mean(), acc.count(), seed};
}

double fraction_paired(const Partition& partition, const InteriorMask& mask) {
  if (mask.interior.size() != partition.size()) {
    throw ValidationError("fraction_paired: mask does not match partition");
  }
  std::size_t inside = 0, paired = 0;
  for (std::size_t i = 0; i < partition.size(); ++i) {
    if (!mask[i]) continue;
    ++inside;
    paired += partition.is_paired(i);
  }
  if (inside == 0) throw ValidationError("fraction_paired: interior is empty");
  return static_cast<double>(paired) / static_cast<double>(inside);
}

VoronoiShare voronoi_share_pairs(const Configuration& config,
                                 const Partition& partition,
                                 std::size_t probes, Rng& rng, double margin) {
  check_sizes(config, partition);
  if (probes == 0) throw ValidationError("voronoi_share_pairs: no probes");
  const Window inner = config.window.shrunk(margin);
  if (!(inner.area() > 0) || config.atoms.empty()) {
    throw ValidationError("voronoi_share_pairs: empty probe region");
  }
  const KdTree tree(config.atoms);
  std::size_t hits = 0;
  for (std::size_t k = 0; k < probes; ++k) {
    const KdTree::Neighbor nb = tree.nearest(sample_uniform_point(inner, rng));
    hits += partition.is_paired(nb.index);
  }
  VoronoiShare out;
  out.probes = probes;
  out.pairs = static_cast<double>(hits) / static_cast<double>(probes);
  out.singles = 1 - out.pairs;
  return out;
}

QuadResult voronoi_pair_integral(double lambda, double tolerance) {
  if (!(lambda > 0)) throw ValidationError("voronoi_pair_integral: lambda must be positive");
  if (!(tolerance > 0) || tolerance >= 1) {
    throw ValidationError("voronoi_pair_integral: tolerance must be in (0, 1)");
  }
  // Nearest atom x at radius r; its NN y at radius s > r and relative angle
  // psi. Rotation invariance removes the absolute angle of x.
  const double log_cut = std::log(1e3 / tolerance);
  const double r_max = std::sqrt(log_cut / (lambda * kPi));
  const double t_max = std::sqrt(log_cut / (lambda * kPi * (2 - kLensGamma))) + r_max;
  const double inner_tol = std::max(tolerance * 1e-2, 1e-12);

  double worst = 0;
  auto over_psi = [&](double r, double s) {
    auto f = [&](double psi) {
      if (psi == 0 && s == r) return 0.0;
      return std::exp(-lambda * three_disc_residual_area(r, s, 0, psi));
    };
    return 2 * integrate(f, 0.0, kPi, inner_tol, 12).value;
  };
  auto over_s = [&](double r) {
    const QuadResult q = integrate(
        [&](double s) { return s * over_psi(r, s); }, r, r + t_max,
        inner_tol * 10, 12);
    worst = std::max(worst, q.error / std::max(q.value, 1e-300));
    return q.value;
  };
  QuadResult out = integrate(
      [&](double r) {
        return r * std::exp(-lambda * kPi * r * r) * over_s(r);
      },
      0.0, r_max, tolerance * 0.1, 12);
  const double scale = 2 * kPi * lambda * lambda;
  out.value *= scale;
  out.error = out.error * scale + worst * out.value;
  if (out.error > tolerance) {
    throw NumericalError("voronoi_pair_integral: tolerance not reached", out.error);
  }
  return out;
}

EmpiricalCdf empirical_cdf(std::span<const double> samples,
                           std::span<const double> grid) {
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw ValidationError("empirical_cdf: grid must be increasing");
  }
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  EmpiricalCdf out;
  out.grid.assign(grid.begin(), grid.end());
  out.values.reserve(grid.size());
  const double n = static_cast<double>(s.size());
  for (double r : grid) {
    const auto k = std::upper_bound(s.begin(), s.end(), r) - s.begin();
    out.values.push_back(s.empty() ? 0.0 : static_cast<double>(k) / n);
  }
  return out;
}

EmpiricalCdf average_cdfs(std::span<const EmpiricalCdf> reps) {
  if (reps.empty()) throw ValidationError("average_cdfs: no replications");
  EmpiricalCdf out;
  out.grid = reps.front().grid;
  std::vector<MeanAccumulator> acc(out.grid.size());
  for (const EmpiricalCdf& r : reps) {
    if (r.grid != out.grid) throw ValidationError("average_cdfs: grids differ");
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k].add(r.values[k]);
  }
  for (const MeanAccumulator& a : acc) {
    out.values.push_back(a.mean());
    out.std_error.push_back(a.stderr_of_mean());
  }
  return out;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
  if (points < 2 || !(hi > lo)) throw ValidationError("linear_grid: bad range");
  std::vector<double> g(points);
  for (std::size_t k = 0; k < points; ++k) {
    g[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
  }
  return g;
}

std::vector<double> pair_distances(const Configuration& config,
                                   const Partition& partition,
                                   const InteriorMask& mask) {
  check_sizes(config, partition);
  std::vector<double> out;
  for (const auto& [i, j] : partition.pairs) {
    if (mask[i]) out.push_back(distance(config.atoms[i], config.atoms[j]));
  }
  return out;
}

EmpiricalCdf empirical_nn_pairs(const Configuration& config,
                                const Partition& partition,
                                const InteriorMask& mask,
                                std::span<const double> grid) {
  const std::vector<double> d = pair_distances(config, partition, mask);
  return empirical_cdf(d, grid);
}

double analytic_nn_pairs(double r, double lambda) {
  if (r <= 0) return 0;
  return -std::expm1(-lambda * kPi * r * r * (2 - kLensGamma));
}

std::vector<double> same_role_nn_distances(const Configuration& config,
                                           const Partition& partition,
                                           Role role, const InteriorMask& mask) {
  check_sizes(config, partition);
  std::vector<Point2> pts;
  std::vector<std::uint8_t> inside;
  for (std::size_t i = 0; i < config.atoms.size(); ++i) {
    if (partition.is_paired(i) == (role == Role::paired)) {
      pts.push_back(config.atoms[i]);
      inside.push_back(mask.interior[i]);
    }
  }
  std::vector<double> out;
  if (pts.size() < 2) return out;
  const KdTree tree(pts);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (inside[k]) out.push_back(std::sqrt(tree.nearest(pts[k], k).dist2));
  }
  return out;
}

std::vector<double> empty_space_distances(const Configuration& config,
                                          const Partition& partition,
                                          Role role, std::size_t probes,
                                          Rng& rng, double margin) {
  check_sizes(config, partition);
  const Window inner = config.window.shrunk(margin);
  if (!(inner.area() > 0)) {
    throw ValidationError("empty_space_distances: empty probe region");
  }
  const std::vector<Point2> pts = role_atoms(config, partition, role);
  std::vector<double> out;
  if (pts.empty()) return out;
  const KdTree tree(pts);
  out.reserve(probes);
  for (std::size_t k = 0; k < probes; ++k) {
    out.push_back(std::sqrt(tree.nearest(sample_uniform_point(inner, rng)).dist2));
  }
  return out;
}

EmpiricalCdf empirical_es(const Configuration& config,
                          const Partition& partition, Role role,
                          std::span<const double> grid, std::size_t probes,
                          Rng& rng, double margin) {
  const std::vector<double> d =
      empty_space_distances(config, partition, role, probes, rng, margin);
  return empirical_cdf(d, grid);
}

JCurve j_function(const EmpiricalCdf& g, const EmpiricalCdf& f,
                  double reliable_floor) {
  if (g.grid != f.grid) throw ValidationError("j_function: grids differ");
  const bool with_se = g.std_error.size() == g.grid.size() &&
                       f.std_error.size() == f.grid.size();
  JCurve out;
  out.cutoff = g.grid.empty() ? 0 : g.grid.back();
  for (std::size_t k = 0; k < g.grid.size(); ++k) {
    const double sf = 1 - f.values[k];
    if (sf < reliable_floor) {
      out.cutoff = g.grid[k];
      break;
    }
    const double sg = 1 - g.values[k];
    const double j = sg / sf;
    out.grid.push_back(g.grid[k]);
    out.values.push_back(j);
    if (with_se) {
      // Delta method, treating G and F as independent.
      const double rg = sg > 0 ? g.std_error[k] / sg : 0.0;
      const double rf = f.std_error[k] / sf;
      out.std_error.push_back(sg > 0 ? j * std::sqrt(rg * rg + rf * rf)
                                     : f.std_error[k] / sf);
    }
  }
  return out;
}

double ks_statistic(std::span<const double> samples,
                    const std::function<double(double)>& cdf) {
  if (samples.empty()) throw ValidationError("ks_statistic: no samples");
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  double d = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double fi = cdf(s[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - fi,
                  fi - static_cast<double>(i) / n});
  }
  return d;
}

double ks_statistic_discrete(std::span<const long> samples,
                             const std::function<double(long)>& cdf) {
  if (samples.empty()) throw ValidationError("ks_statistic_discrete: no samples");
  std::vector<long> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  double d = 0;
  for (long k = std::min(0L, s.front()); k <= s.back(); ++k) {
    const auto c = std::upper_bound(s.begin(), s.end(), k) - s.begin();
    d = std::max(d, std::abs(static_cast<double>(c) / n - cdf(k)));
  }
  return d;
}

double ks_critical(std::size_t n, double alpha) {
  if (n == 0 || !(alpha > 0 && alpha < 1)) {
    throw ValidationError("ks_critical: bad arguments");
  }
  return std::sqrt(-0.5 * std::log(alpha / 2)) / std::sqrt(static_cast<double>(n));
}

ChiSquare poisson_chi_square(std::span<const long> counts, double mean) {
  if (counts.empty() || !(mean > 0)) {
    throw ValidationError("poisson_chi_square: bad arguments");
  }
  const boost::math::poisson_distribution<double> pois(mean);
  const double n = static_cast<double>(counts.size());
  // Cells [lo, hi] expanded from the mode until each has expected >= 5.
  std::vector<std::pair<long, double>> cells;  // (upper bound, probability)
  long k = 0;
  double acc = 0;
  const long kmax = static_cast<long>(mean + 20 * std::sqrt(mean) + 20);
  for (; k <= kmax; ++k) {
    acc += boost::math::pdf(pois, static_cast<double>(k));
    if (acc * n >= 5) {
      cells.emplace_back(k, acc);
      acc = 0;
    }
  }
  // Fold the remaining upper tail into the last cell.
  if (cells.empty()) throw ValidationError("poisson_chi_square: too few counts");
  double tail = boost::math::cdf(complement(pois, static_cast<double>(cells.back().first)));
  cells.back().second += tail;
  cells.back().first = std::numeric_limits<long>::max();

  std::vector<double> observed(cells.size(), 0.0);
  for (long c : counts) {
    const auto it = std::lower_bound(
        cells.begin(), cells.end(), c,
        [](const std::pair<long, double>& cell, long v) { return cell.first < v; });
    observed[static_cast<std::size_t>(it - cells.begin())] += 1;
  }
  ChiSquare out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const double e = cells[i].second * n;
    out.statistic += (observed[i] - e) * (observed[i] - e) / e;
  }
  out.dof = static_cast<int>(cells.size()) - 1;
  if (out.dof < 1) throw ValidationError("poisson_chi_square: too few cells");
  const boost::math::chi_squared_distribution<double> chi(out.dof);
  out.p_value = boost::math::cdf(complement(chi, out.statistic));
  return out;
}

}  // namespace coopgeo
