// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#include "coopgeo/signals.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "coopgeo/error.hpp"
#include "coopgeo/pointproc.hpp"
#include "coopgeo/quadrature.hpp"
#include "coopgeo/special.hpp"

namespace coopgeo {
namespace {

constexpr double kErlangSwitch = 1e-9;
constexpr double kNudge = 1e-6;

void check_distances(double r, double z) {
  if (!(r > 0) || !(z > 0)) throw ValidationError("distances must be positive");
}

[[noreturn]] void unsupported(const SignalModel& m, const char* what) {
  throw UnsupportedError(std::string(what) + " is not available for model " +
                         m.token());
}

double tail_ccdf(const std::vector<TailTerm>& terms, double t) {
  double v = 0;
  for (const TailTerm& k : terms) v += k.c * std::exp(-k.d * t);
  return v;
}

std::string format_q(double q) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", q);
  return buf;
}

}  // namespace

void PathLoss::validate() const {
  if (!(p > 0) || !std::isfinite(p)) throw ValidationError("path loss: p must be positive");
  if (!(beta > 2) || !std::isfinite(beta)) {
    throw ValidationError("path loss: beta must exceed 2");
  }
}

double PathLoss::mean_at(double r) const { return p / std::pow(r, beta); }
double PathLoss::rate_at(double r) const { return std::pow(r, beta) / p; }

PathLoss make_path_loss(double p, double beta) {
  PathLoss pl{p, beta};
  pl.validate();
  return pl;
}

SignalModel SignalModel::single() {
  SignalModel m;
  m.kind = ModelKind::single;
  return m;
}

SignalModel SignalModel::nsc() { return SignalModel{}; }

SignalModel SignalModel::off(double q) {
  if (!(q > 0 && q < 1)) throw ValidationError("OFF model: q must be in (0, 1)");
  SignalModel m;
  m.kind = ModelKind::off;
  m.q = q;
  return m;
}

SignalModel SignalModel::max() {
  SignalModel m;
  m.kind = ModelKind::max;
  return m;
}

SignalModel SignalModel::ph(Phase phase) {
  SignalModel m;
  m.kind = ModelKind::ph;
  m.phase = phase;
  return m;
}

SignalModel SignalModel::tail_form(TailFormFn terms, std::string label) {
  if (!terms) throw ValidationError("tail-form model: empty term function");
  SignalModel m;
  m.kind = ModelKind::tail_form;
  m.custom = std::move(terms);
  m.label = std::move(label);
  const PathLoss pl{1, 4};
  for (double r : {0.2, 0.7, 1.0, 2.5}) {
    for (double z : {0.3, 1.0, 1.7, 4.0}) {
      const std::vector<TailTerm> t = m.custom(r, z, pl);
      double prev = tail_ccdf(t, 0);
      if (std::abs(prev - 1) > 1e-9) {
        throw ValidationError("tail-form model: CCDF at 0 is not 1");
      }
      for (double x = 1e-3; x < 1e4; x *= 1.5) {
        const double v = tail_ccdf(t, x);
        if (v < -1e-12 || v > prev + 1e-12) {
          throw ValidationError("tail-form model: CCDF not monotone in [0, 1]");
        }
        prev = v;
      }
    }
  }
  return m;
}

std::string SignalModel::token() const {
  switch (kind) {
    case ModelKind::single: return "single";
    case ModelKind::nsc: return "nsc";
    case ModelKind::off: return "off:q=" + format_q(q);
    case ModelKind::max: return "max";
    case ModelKind::ph: return phase == Phase::coherent ? "ph:coherent" : "ph:uniform";
    case ModelKind::tail_form: return "tail:" + label;
  }
  return "unknown";
}

SignalModel parse_model(std::string_view token) {
  if (token == "single") return SignalModel::single();
  if (token == "nsc") return SignalModel::nsc();
  if (token == "max") return SignalModel::max();
  if (token == "ph:coherent") return SignalModel::ph(Phase::coherent);
  if (token == "ph:uniform") return SignalModel::ph(Phase::uniform);
  if (token == "off") return SignalModel::off(0.5);
  if (token.starts_with("off:q=")) {
    const std::string v(token.substr(6));
    char* end = nullptr;
    const double q = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size()) {
      throw ValidationError("bad OFF parameter in '" + std::string(token) + "'");
    }
    return SignalModel::off(q);
  }
  throw ValidationError("unknown signal model '" + std::string(token) + "'");
}

double single_signal(const PathLoss& pl, double r, Rng& rng) {
  if (!(r > 0)) throw ValidationError("single_signal: distance must be positive");
  return pl.mean_at(r) * sample_exponential(1.0, rng);
}

double single_lt(const PathLoss& pl, double r, double s) {
  const double mu = pl.rate_at(r);
  return mu / (mu + s);
}

double pair_signal(const SignalModel& m, const PathLoss& pl, double r, double z,
                   Rng& rng) {
  check_distances(r, z);
  const double sr = pl.mean_at(r) * sample_exponential(1.0, rng);
  const double sz = pl.mean_at(z) * sample_exponential(1.0, rng);
  switch (m.kind) {
    case ModelKind::single: unsupported(m, "pair_signal");
    case ModelKind::nsc: return sr + sz;
    case ModelKind::off: return rng.uniform() < m.q ? sr : sz;
    case ModelKind::max: return std::max(sr, sz);
    case ModelKind::ph: {
      double cross = 1;
      if (m.phase == Phase::uniform) {
        cross = std::cos(sample_uniform_angle(rng) - sample_uniform_angle(rng));
      }
      return sr + sz + 2 * std::sqrt(sr * sz) * cross;
    }
    case ModelKind::tail_form: {
      const std::vector<TailTerm> t = m.custom(r, z, pl);
      const double u = rng.uniform();
      double lo = 0, hi = 1;
      while (tail_ccdf(t, hi) > u) hi *= 2;
      for (int k = 0; k < 200 && hi - lo > 1e-14 * hi; ++k) {
        const double mid = 0.5 * (lo + hi);
        (tail_ccdf(t, mid) > u ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    }
  }
  unsupported(m, "pair_signal");
}

std::vector<TailTerm> tail_terms(const SignalModel& m, const PathLoss& pl,
                                 double r, double z) {
  check_distances(r, z);
  const double m1 = pl.rate_at(r);
  double m2 = pl.rate_at(z);
  switch (m.kind) {
    case ModelKind::single: return {{1, m1}};
    case ModelKind::nsc: {
      if (std::abs(m2 - m1) < kNudge * m1) m2 = m1 * (1 + kNudge);
      const double g = m2 - m1;
      return {{m2 / g, m1}, {-m1 / g, m2}};
    }
    case ModelKind::off: return {{m.q, m1}, {1 - m.q, m2}};
    case ModelKind::max: return {{1, m1}, {1, m2}, {-1, m1 + m2}};
    case ModelKind::tail_form: return m.custom(r, z, pl);
    case ModelKind::ph: break;
  }
  unsupported(m, "tail_terms");
}

double pair_ccdf(const SignalModel& m, const PathLoss& pl, double r, double z,
                 double t) {
  check_distances(r, z);
  if (t <= 0) return 1;
  if (m.kind == ModelKind::nsc) {
    const double m1 = pl.rate_at(r), m2 = pl.rate_at(z);
    if (std::abs(m1 - m2) < kErlangSwitch * m1) {
      return (1 + m1 * t) * std::exp(-m1 * t);
    }
    return (m2 * std::exp(-m1 * t) - m1 * std::exp(-m2 * t)) / (m2 - m1);
  }
  return tail_ccdf(tail_terms(m, pl, r, z), t);
}

double pair_lt(const SignalModel& m, const PathLoss& pl, double r, double z,
               double s) {
  check_distances(r, z);
  const double a = single_lt(pl, r, s);
  const double b = single_lt(pl, z, s);
  switch (m.kind) {
    case ModelKind::single: return a;
    case ModelKind::nsc: return a * b;
    case ModelKind::off: return m.q * a + (1 - m.q) * b;
    case ModelKind::max: {
      const double mu = pl.rate_at(r) + pl.rate_at(z);
      return a + b - mu / (mu + s);
    }
    case ModelKind::tail_form: {
      double v = 0;
      for (const TailTerm& k : m.custom(r, z, pl)) v += k.c * k.d / (k.d + s);
      return v;
    }
    case ModelKind::ph: break;
  }
  unsupported(m, "pair_lt");
}

double pair_lt_complement(const SignalModel& m, const PathLoss& pl, double r,
                          double z, double s) {
  check_distances(r, z);
  const double m1 = pl.rate_at(r), m2 = pl.rate_at(z);
  const double ca = s / (m1 + s);  // 1 - L_r
  const double cb = s / (m2 + s);  // 1 - L_z
  switch (m.kind) {
    case ModelKind::single: return ca;
    case ModelKind::nsc: return ca + (1 - ca) * cb;
    case ModelKind::off: return m.q * ca + (1 - m.q) * cb;
    case ModelKind::max: return ca + cb - s / (m1 + m2 + s);
    case ModelKind::tail_form: {
      double v = 0;
      for (const TailTerm& k : m.custom(r, z, pl)) v += k.c * s / (k.d + s);
      return v;
    }
    case ModelKind::ph: break;
  }
  unsupported(m, "pair_lt_complement");
}

double mean_pair_signal(const SignalModel& m, const PathLoss& pl, double r,
                        double z) {
  check_distances(r, z);
  const double a = pl.mean_at(r), b = pl.mean_at(z);
  switch (m.kind) {
    case ModelKind::single: return a;
    case ModelKind::nsc: return a + b;
    case ModelKind::off: return m.q * a + (1 - m.q) * b;
    case ModelKind::max: return a + b - a * b / (a + b);
    case ModelKind::ph:
      return m.phase == Phase::uniform
                 ? a + b
                 : a + b + 0.5 * std::numbers::pi * std::sqrt(a * b);
    case ModelKind::tail_form: {
      double v = 0;
      for (const TailTerm& k : m.custom(r, z, pl)) v += k.c / k.d;
      return v;
    }
  }
  unsupported(m, "mean_pair_signal");
}

double pair_lt_conditional(const SignalModel& m, const PathLoss& pl, double s,
                           double r, double rho, double alpha) {
  if (!(alpha > 0)) throw ValidationError("pair_lt_conditional: alpha must be positive");
  if (!(r > 0)) throw ValidationError("pair_lt_conditional: r must be positive");
  const double width = alpha * std::sqrt(-2 * std::log(1e-10));
  const double lo = std::max({rho, r - width, 0.0});
  const double hi = rice_upper(r, alpha, 1e-10);
  if (lo >= hi) return 0;
  auto f = [&](double z) {
    if (z <= 0) return 0.0;
    return pair_lt(m, pl, r, z, s) * rice_pdf(z, r, alpha);
  };
  return integrate(f, lo, hi, 1e-10, 12).value;
}

}  // namespace coopgeo
