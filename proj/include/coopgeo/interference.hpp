// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "coopgeo/mnnr.hpp"
#include "coopgeo/quadrature.hpp"
#include "coopgeo/signals.hpp"
#include "coopgeo/stats.hpp"

namespace coopgeo {

//! Aggregate interference at the origin split by station role.
struct InterferenceSample {
  double singles = 0;
  double pairs = 0;
};

//! Singles beyond R contribute single signals; a pair contributes only if
//! both members lie beyond R.
InterferenceSample mc_interference(const Configuration& config,
                                   const Partition& partition,
                                   const SignalModel& model,
                                   const PathLoss& pl, double guard_radius,
                                   Rng& rng);

//! Closed-form mean interference from singles beyond R > 0.
double expected_interference_singles(double lambda, const PathLoss& pl,
                                     double guard_radius);

//! Mean interference from pairs beyond R > 0 by three-dimensional
//! quadrature of the pair correlation.
QuadResult expected_interference_pairs(double lambda, const SignalModel& model,
                                       const PathLoss& pl, double guard_radius,
                                       double rel_tol = 1e-7);

struct IntensityEstimate {
  Estimate singles;
  Estimate pairs;
  double ratio = 0;  //!< singles / pairs
};

//! Interior intensities of singles and paired atoms over replications.
IntensityEstimate intensity_check(double lambda, const Window& window,
                                  double margin, std::size_t reps,
                                  std::uint64_t seed, unsigned workers);

using SiteFunction = std::function<double(Point2)>;

struct SeriesTerm {
  int n = 0;
  double weight = 0;  //!< Poisson probability of n atoms
  double mean = 0;    //!< conditional Laplace functional given n atoms
  double std_error = 0;
};

struct LaplaceSeries {
  double value = 0;
  double std_error = 0;
  double truncation_bound = 0;  //!< P(N > n_max)
  std::vector<SeriesTerm> terms;
};

//! Laplace functional E exp(-sum f(x) 1{x has role}) over a finite window,
//! expanded in the number of atoms. Throws NumericalError if the Poisson
//! tail beyond n_max exceeds tolerance.
LaplaceSeries laplace_window_series(double lambda, const Window& window,
                                    const SiteFunction& f, Role which,
                                    int n_max, std::size_t mc_per_term,
                                    Rng& rng, double tolerance = 1e-3);

//! Same functional by direct simulation of the process in the window.
Estimate direct_window_laplace(double lambda, const Window& window,
                               const SiteFunction& f, Role which,
                               std::size_t reps, std::uint64_t seed,
                               unsigned workers);

struct ConvergenceRow {
  double radius = 0;
  double expected_atoms = 0;
  double paired_fraction = 0;
  double std_error = 0;
  std::size_t reps = 0;
};

//! Paired fraction of all atoms in discs B(0, R) of growing radius, with the
//! partition taken inside the window only.
std::vector<ConvergenceRow> window_convergence_check(
    double lambda, const std::vector<double>& radii, std::size_t reps,
    std::uint64_t seed, unsigned workers);

}  // namespace coopgeo
