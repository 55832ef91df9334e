// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "coopgeo/pointproc.hpp"
#include "coopgeo/signals.hpp"

namespace coopgeo {

//! Intensity-matched Poisson superposition: singles PPP((1-delta) lambda)
//! plus parents PPP(delta lambda / 2), each parent with one daughter at a
//! Rayleigh(alpha) offset.
struct SuperParams {
  double lambda = 0;
  double delta = 0;
  double alpha = 0;  //!< pair separation scale
  double xi = 0;     //!< nearest-single distance scale
  double zeta = 0;   //!< nearest-parent distance scale

  double singles_intensity() const { return (1 - delta) * lambda; }
  double parents_intensity() const { return 0.5 * delta * lambda; }
  //! Rayleigh scale of the nearest parent's daughter distance.
  double daughter_scale() const;
};

SuperParams derive_params(double lambda);

struct MarkedConfiguration {
  Configuration singles;
  Configuration parents;
  std::vector<Point2> daughters;  //!< one per parent, possibly outside window
};

MarkedConfiguration sample_superposition(const SuperParams& params,
                                         const Window& window, Rng& rng);

//! Joint density of (nearest parent distance, its daughter distance).
double joint_density_r2_z2(const SuperParams& params, double r, double z);
//! P(R2 <= r, Z2 <= z) by quadrature of the joint density.
double joint_cdf_r2_z2(const SuperParams& params, double r, double z);
//! P(R2 > r, Z2 > r).
double nearest_cluster_clear(const SuperParams& params, double r);

//! -log of the Laplace transform of singles interference beyond rho,
//! by quadrature.
double singles_exponent(const SuperParams& params, const PathLoss& pl,
                        double s, double rho);
double lt_interference_singles(const SuperParams& params, const PathLoss& pl,
                               double s, double rho);
//! Closed form of lt_interference_singles at rho = 0.
double lt_singles_closed_form(const SuperParams& params, const PathLoss& pl,
                              double s);

//! -log of the Laplace transform of pairs interference from parents beyond
//! rho whose daughters are also beyond rho.
double pairs_exponent(const SuperParams& params, const SignalModel& model,
                      const PathLoss& pl, double s, double rho);
double lt_interference_pairs(const SuperParams& params,
                             const SignalModel& model, const PathLoss& pl,
                             double s, double rho);

//! As pairs_exponent for parents beyond radius w, daughters unrestricted.
double pairs_far_exponent(const SuperParams& params, const SignalModel& model,
                          const PathLoss& pl, double s, double w);

//! singles_exponent via a closed form plus a short series; for hot loops.
class SinglesExponent {
 public:
  SinglesExponent(const SuperParams& params, const PathLoss& pl);
  double operator()(double s, double rho) const;

 private:
  double coef_;
  double beta_;
  double p_;
  double full_;  // integral of u / (1 + u^beta) over (0, inf)
};

//! pairs_exponent tabulated on (log s, rho) with cubic interpolation of
//! log values; exact evaluation outside the table. rho nodes are
//! log-spaced near zero and uniform further out.
class PairsExponentTable {
 public:
  PairsExponentTable(const SuperParams& params, const SignalModel& model,
                     const PathLoss& pl, double rho_max);
  double operator()(double s, double rho) const;

  double log_s_min() const { return log_s0_; }
  double log_s_max() const { return log_s0_ + ds_ * static_cast<double>(ns_ - 1); }
  double rho_max() const { return rho_nodes_.back(); }

 private:
  double x_of(double rho) const;

  SuperParams params_;
  SignalModel model_;
  PathLoss pl_;
  double log_s0_, ds_;
  std::size_t ns_;
  double rho_min_, len_, dx_;
  std::vector<double> rho_nodes_;
  std::vector<double> log_e_;  // [irho * ns_ + is]
};

//! Far-field exponents (singles and pairs beyond radius w) as functions of s.
class FarFieldTable {
 public:
  FarFieldTable(const SuperParams& params, const SignalModel& model,
                const PathLoss& pl, double w);
  //! Combined exponent; multiply the near-field transform by exp(-value).
  double operator()(double s) const;
  double radius() const { return w_; }

 private:
  SuperParams params_;
  SignalModel model_;
  PathLoss pl_;
  double w_;
  double log_s0_, ds_;
  std::vector<double> log_e_;
};

}  // namespace coopgeo
