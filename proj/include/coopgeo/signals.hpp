// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "coopgeo/rng.hpp"

namespace coopgeo {

//! Received power p * h / r^beta with unit-mean exponential fading h.
struct PathLoss {
  double p = 1;
  double beta = 4;

  //! Throws unless p > 0 and beta > 2.
  void validate() const;
  //! Mean received power at distance r.
  double mean_at(double r) const;
  //! Exponential rate of the received power at distance r.
  double rate_at(double r) const;
};

PathLoss make_path_loss(double p, double beta);

//! One term c * exp(-d * T) of a tail-form CCDF.
struct TailTerm {
  double c = 0;
  double d = 0;
};

using TailFormFn =
    std::function<std::vector<TailTerm>(double r, double z, const PathLoss& pl)>;

enum class ModelKind { single, nsc, off, max, ph, tail_form };
enum class Phase { coherent, uniform };

//! Signal combination rule for a pair of stations at distances (r, z).
struct SignalModel {
  ModelKind kind = ModelKind::nsc;
  double q = 0.5;  //!< OFF: probability that the r-station transmits
  Phase phase = Phase::uniform;
  TailFormFn custom;
  std::string label;

  static SignalModel single();
  static SignalModel nsc();
  static SignalModel off(double q);
  static SignalModel max();
  static SignalModel ph(Phase phase);
  //! User CCDF sum_i c_i exp(-d_i T); checked on a sample grid.
  static SignalModel tail_form(TailFormFn terms, std::string label);

  std::string token() const;
};

//! Parses single | nsc | off[:q=Q] | max | ph:coherent | ph:uniform.
SignalModel parse_model(std::string_view token);

double single_signal(const PathLoss& pl, double r, Rng& rng);
//! Laplace transform of the single-station signal.
double single_lt(const PathLoss& pl, double r, double s);

//! Draws the pair signal. Fading draws come first and in a fixed order so
//! that different models are coupled on a shared stream.
double pair_signal(const SignalModel& model, const PathLoss& pl, double r,
                   double z, Rng& rng);

//! Tail-form coefficients of the pair signal CCDF. For NSC with nearly equal
//! rates the second rate is nudged by a relative 1e-6.
std::vector<TailTerm> tail_terms(const SignalModel& model, const PathLoss& pl,
                                 double r, double z);

double pair_ccdf(const SignalModel& model, const PathLoss& pl, double r,
                 double z, double t);
double pair_lt(const SignalModel& model, const PathLoss& pl, double r,
               double z, double s);
//! 1 - pair_lt without cancellation for small s.
double pair_lt_complement(const SignalModel& model, const PathLoss& pl,
                          double r, double z, double s);
double mean_pair_signal(const SignalModel& model, const PathLoss& pl, double r,
                        double z);

//! E[L_g(s; r, Z) 1{Z > rho}] with Z ~ Rice(r, alpha), truncated where the
//! Rice tail drops below 1e-10.
double pair_lt_conditional(const SignalModel& model, const PathLoss& pl,
                           double s, double r, double rho, double alpha);

}  // namespace coopgeo
