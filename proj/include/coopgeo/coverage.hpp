// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "coopgeo/signals.hpp"
#include "coopgeo/superposition.hpp"

namespace coopgeo {

enum class Association { fixed, closest };

Association parse_association(std::string_view token);
std::string to_string(Association a);

//! Serving and interfering signal rules. `none` disables cooperation.
struct Scheme {
  std::string token;
  SignalModel serving;
  SignalModel interfering;
  bool cooperative = true;
};

//! none | maxoff | any signal-model token (used for both roles).
Scheme parse_scheme(std::string_view token);

double db_to_linear(double db);
double linear_to_db(double t);
//! Linear thresholds for lo..hi dB inclusive in the given step.
std::vector<double> db_grid(double lo_db = -10, double hi_db = 20, double step = 1);

struct CoverageMeta {
  std::string model;  //!< mnnr | superposition | baseline
  std::string association;
  std::string scheme;
  std::string method;  //!< analytic | mc
  double lambda = 0;
  double beta = 0;
  double p = 0;
  double sigma2 = 0;
  double r0 = 0;
  std::uint64_t seed = 0;
  std::size_t reps = 0;
  double window_radius = 0;
};

struct CoverageCurve {
  std::vector<double> thresholds;  //!< linear T
  std::vector<double> values;
  std::vector<double> std_error;
  //! Closest association only: fraction of draws served by the nearest
  //! single, nearest parent, nearest parent's daughter.
  std::vector<double> branch_fraction;
  CoverageMeta meta;
};

//! Fixed serving station at distance r0 outside the process.
double coverage_fixed_analytic(const SuperParams& params,
                               const SignalModel& interfering,
                               const PathLoss& pl, double r0, double sigma2,
                               double t);

struct ClosestTerms {
  double g = 0;  //!< nearest single serves
  double h = 0;  //!< nearest parent closer than its daughter
  double k = 0;  //!< daughter closest
  double total = 0;
  double residual = 0;  //!< summed quadrature error estimates
};

//! Closest-cluster coverage on the superposition model. Construction builds
//! the interference tables; evaluation per threshold is then cheap.
class ClosestCoverage {
 public:
  ClosestCoverage(const SuperParams& params, const Scheme& scheme,
                  const PathLoss& pl, double sigma2);
  ~ClosestCoverage();
  ClosestCoverage(ClosestCoverage&&) noexcept;

  ClosestTerms operator()(double t) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

double coverage_closest_analytic(const SuperParams& params,
                                 const Scheme& scheme, const PathLoss& pl,
                                 double sigma2, double t);

CoverageCurve coverage_curve_analytic(const SuperParams& params,
                                      const Scheme& scheme, const PathLoss& pl,
                                      Association association, double r0,
                                      double sigma2,
                                      const std::vector<double>& thresholds);

struct McOptions {
  std::size_t reps = 10000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  //! Simulation disc radius in km; 0 picks a default from lambda.
  double window_radius = 0;
  //! Average closed-form fading expectations given positions instead of
  //! indicator draws. Falls back to indicators for PH.
  bool conditional = true;
  //! Add the exact far-field transform beyond the window (conditional only).
  bool far_field = true;
};

CoverageCurve mc_coverage_superposition(const SuperParams& params,
                                        const Scheme& scheme,
                                        const PathLoss& pl,
                                        Association association, double r0,
                                        double sigma2,
                                        const std::vector<double>& thresholds,
                                        const McOptions& options);

CoverageCurve mc_coverage_mnnr(double lambda, const Scheme& scheme,
                               const PathLoss& pl, Association association,
                               double r0, double sigma2,
                               const std::vector<double>& thresholds,
                               const McOptions& options);

//! Non-cooperative Poisson network with Rayleigh fading, no noise. Closest
//! association is independent of lambda; fixed uses distance r0.
double baseline_nocoop(double lambda, const PathLoss& pl, Association association,
                       double r0, double t);

CoverageCurve coverage_baseline_nocoop(double lambda, const PathLoss& pl,
                                       const std::vector<double>& thresholds,
                                       Association association = Association::closest,
                                       double r0 = 1);

//! Largest pointwise difference a - b.
double peak_gain(const CoverageCurve& a, const CoverageCurve& b);
//! Mean of a - b over thresholds where b lies in [lo, hi].
double mean_gain(const CoverageCurve& a, const CoverageCurve& b, double lo = 0.25,
                 double hi = 0.75);

}  // namespace coopgeo
