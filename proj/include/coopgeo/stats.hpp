// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "coopgeo/mnnr.hpp"
#include "coopgeo/quadrature.hpp"

namespace coopgeo {

//! Running mean and standard error (Welford).
class MeanAccumulator {
 public:
  void add(double x);
  void merge(const MeanAccumulator& other);
  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const;
  double stderr_of_mean() const;

 private:
  std::size_t n_ = 0;
  double mean_ = 0;
  double m2_ = 0;
};

//! Replicated scalar estimate.
struct Estimate {
  double estimate = 0;
  double std_error = 0;
  std::size_t n_reps = 0;
  std::uint64_t seed = 0;
};

Estimate make_estimate(const MeanAccumulator& acc, std::uint64_t seed);

enum class Role { single, paired };

//! Fraction of interior atoms that are paired. Throws if none are interior.
double fraction_paired(const Partition& partition, const InteriorMask& mask);

struct VoronoiShare {
  double pairs = 0;
  double singles = 0;
  std::size_t probes = 0;
};

//! Area share of Voronoi cells of paired atoms, by uniform probes in the
//! window eroded by margin.
VoronoiShare voronoi_share_pairs(const Configuration& config,
                                 const Partition& partition,
                                 std::size_t probes, Rng& rng, double margin);

//! Probability that the atom nearest a fixed point is paired, by nested
//! quadrature of the four-dimensional Poisson integral.
QuadResult voronoi_pair_integral(double lambda, double tolerance = 1e-6);

//! Step values of an empirical CDF on a grid, with optional across-rep
//! standard errors.
struct EmpiricalCdf {
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> std_error;
};

EmpiricalCdf empirical_cdf(std::span<const double> samples,
                           std::span<const double> grid);

//! Pointwise mean and standard error over replications on a common grid.
EmpiricalCdf average_cdfs(std::span<const EmpiricalCdf> reps);

std::vector<double> linear_grid(double lo, double hi, std::size_t points);

//! Partner distances of pairs whose lower-index atom is interior.
std::vector<double> pair_distances(const Configuration& config,
                                   const Partition& partition,
                                   const InteriorMask& mask);

EmpiricalCdf empirical_nn_pairs(const Configuration& config,
                                const Partition& partition,
                                const InteriorMask& mask,
                                std::span<const double> grid);

//! 1 - exp(-lambda * pi * r^2 * (2 - gamma)).
double analytic_nn_pairs(double r, double lambda);

//! Distance from each interior atom of the role to the nearest other atom
//! of the same role (the G-function sample).
std::vector<double> same_role_nn_distances(const Configuration& config,
                                           const Partition& partition,
                                           Role role, const InteriorMask& mask);

//! Distance from uniform probes (window eroded by margin) to the nearest
//! atom of the role (the empty-space F-function sample).
std::vector<double> empty_space_distances(const Configuration& config,
                                          const Partition& partition,
                                          Role role, std::size_t probes,
                                          Rng& rng, double margin);

EmpiricalCdf empirical_es(const Configuration& config,
                          const Partition& partition, Role role,
                          std::span<const double> grid, std::size_t probes,
                          Rng& rng, double margin);

//! J = (1 - G) / (1 - F), truncated where 1 - F < reliable_floor.
struct JCurve {
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> std_error;
  double cutoff = 0;  //!< first excluded radius
};

JCurve j_function(const EmpiricalCdf& g, const EmpiricalCdf& f,
                  double reliable_floor = 0.05);

//! Kolmogorov-Smirnov distance to a continuous CDF.
double ks_statistic(std::span<const double> samples,
                    const std::function<double(double)>& cdf);

//! Kolmogorov-Smirnov distance to an integer-valued CDF.
double ks_statistic_discrete(std::span<const long> samples,
                             const std::function<double(long)>& cdf);

//! Asymptotic one-sample critical value at significance level alpha.
double ks_critical(std::size_t n, double alpha);

struct ChiSquare {
  double statistic = 0;
  int dof = 0;
  double p_value = 0;
};

//! Goodness of fit of counts to Poisson(mean), cells with expected >= 5.
ChiSquare poisson_chi_square(std::span<const long> counts, double mean);

}  // namespace coopgeo
