// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#include "coopgeo/superposition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "coopgeo/error.hpp"
#include "coopgeo/quadrature.hpp"
#include "coopgeo/special.hpp"

namespace coopgeo {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTinyLog = -700;

// Half-width (in units of alpha) of the Rice window kept in z-integrals.
const double kRiceWidth = std::sqrt(-2 * std::log(1e-12));

void check_s(double s) {
  if (!(s >= 0) || !std::isfinite(s)) {
    throw ValidationError("Laplace argument must be finite and nonnegative");
  }
}

void check_rho(double rho) {
  if (!(rho >= 0) || !std::isfinite(rho)) {
    throw ValidationError("exclusion radius must be finite and nonnegative");
  }
}

// Integral over z in [zlo, inf) of (1 - L(s; r, z)) f(z | r).
double pair_complement_given_r(const SignalModel& model, const PathLoss& pl,
                               double alpha, double s, double r, double zlo) {
  const double lo = std::max({zlo, r - kRiceWidth * alpha, 0.0});
  const double hi = r + kRiceWidth * alpha;
  if (lo >= hi) return 0;
  auto f = [&](double z) {
    if (z <= 0) return 0.0;
    return pair_lt_complement(model, pl, r, z, s) * rice_pdf(z, r, alpha);
  };
  // The complement falls from 1 like z^-beta past z = (s p)^(1/beta); split
  // geometrically from there.
  double b = 0.25 * std::pow(s * pl.p, 1 / pl.beta);
  double v = 0, a = lo;
  while (a < hi) {
    const double next = b > a ? std::min(b, hi) : hi;
    if (b <= a && b > 0) {
      b *= 4;
      continue;
    }
    v += boost::math::quadrature::gauss<double, 30>::integrate(f, a, next);
    a = next;
    b *= 4;
  }
  return v;
}

double log_clamped(double v) {
  return v > 0 ? std::max(std::log(v), kTinyLog) : kTinyLog;
}

// Four-point Lagrange weights at fractional offset t in [0, 1] relative to
// nodes -1, 0, 1, 2.
void lagrange4(double t, double w[4]) {
  w[0] = -t * (t - 1) * (t - 2) / 6;
  w[1] = (t + 1) * (t - 1) * (t - 2) / 2;
  w[2] = -(t + 1) * t * (t - 2) / 2;
  w[3] = (t + 1) * t * (t - 1) / 6;
}

// Index of the first of four stencil nodes and the offset within the cell.
void stencil(double x, std::size_t n, std::size_t& i0, double& t) {
  const double cell = std::clamp(std::floor(x), 0.0, static_cast<double>(n - 2));
  t = x - cell;
  auto c = static_cast<std::size_t>(cell);
  if (c == 0) {
    i0 = 0;
    t -= 1;  // offset measured from node 1 of the stencil
  } else if (c + 2 >= n) {
    i0 = n - 4;
    t += static_cast<double>(c - i0 - 1);
  } else {
    i0 = c - 1;
  }
}

}  // namespace

double SuperParams::daughter_scale() const {
  return std::sqrt(alpha * alpha + zeta * zeta);
}

SuperParams derive_params(double lambda) {
  if (!(lambda > 0) || !std::isfinite(lambda)) {
    throw ValidationError("derive_params: lambda must be positive");
  }
  SuperParams p;
  p.lambda = lambda;
  p.delta = kPairedFraction;
  p.alpha = 1 / std::sqrt(2 * lambda * kPi * (2 - kLensGamma));
  p.xi = 1 / std::sqrt((1 - p.delta) * 2 * lambda * kPi);
  p.zeta = 1 / std::sqrt(p.delta * lambda * kPi);
  return p;
}

MarkedConfiguration sample_superposition(const SuperParams& params,
                                         const Window& window, Rng& rng) {
  MarkedConfiguration m;
  m.singles = sample_ppp_raw(params.singles_intensity(), window, rng);
  m.parents = sample_ppp_raw(params.parents_intensity(), window, rng);
  m.daughters.reserve(m.parents.size());
  for (const Point2& y : m.parents.atoms) {
    const double dx = params.alpha * sample_normal(rng);
    const double dy = params.alpha * sample_normal(rng);
    m.daughters.push_back({y.x + dx, y.y + dy});
  }
  return m;
}

double joint_density_r2_z2(const SuperParams& params, double r, double z) {
  if (r <= 0 || z <= 0) return 0;
  return rayleigh_pdf(r, params.zeta) * rice_pdf(z, r, params.alpha);
}

double joint_cdf_r2_z2(const SuperParams& params, double r, double z) {
  if (r <= 0 || z <= 0) return 0;
  auto f = [&](double u) {
    return rayleigh_pdf(u, params.zeta) * rice_cdf(z, u, params.alpha);
  };
  return integrate(f, 0.0, r, 1e-10, 12).value;
}

double nearest_cluster_clear(const SuperParams& params, double r) {
  if (r <= 0) return 1;
  const double v = 1 - rayleigh_cdf(r, params.zeta) -
                   rayleigh_cdf(r, params.daughter_scale()) +
                   joint_cdf_r2_z2(params, r, r);
  return std::clamp(v, 0.0, 1.0);
}

double singles_exponent(const SuperParams& params, const PathLoss& pl,
                        double s, double rho) {
  pl.validate();
  check_s(s);
  check_rho(rho);
  if (s == 0) return 0;
  const double scale = std::pow(s * pl.p, 1 / pl.beta);
  const double a = rho / scale;
  auto f = [&](double u) { return u / (1 + std::pow(u, pl.beta)); };
  const QuadResult q = integrate_tail(f, a, 1e-12);
  return params.singles_intensity() * 2 * kPi * scale * scale * q.value;
}

double lt_interference_singles(const SuperParams& params, const PathLoss& pl,
                               double s, double rho) {
  return std::exp(-singles_exponent(params, pl, s, rho));
}

double lt_singles_closed_form(const SuperParams& params, const PathLoss& pl,
                              double s) {
  pl.validate();
  check_s(s);
  const double b = pl.beta;
  return std::exp(-params.singles_intensity() * 2 * kPi * kPi *
                  std::pow(s * pl.p, 2 / b) / b / std::sin(2 * kPi / b));
}

double pairs_exponent(const SuperParams& params, const SignalModel& model,
                      const PathLoss& pl, double s, double rho) {
  pl.validate();
  check_s(s);
  check_rho(rho);
  if (s == 0) return 0;
  auto outer = [&](double r) {
    if (r <= 0) return 0.0;
    return r * pair_complement_given_r(model, pl, params.alpha, s, r, rho);
  };
  const double rc = 4 * std::pow(s * pl.p, 1 / pl.beta);
  double v = 0, lo = rho;
  if (rc > rho) {
    v = integrate(outer, rho, rc, 1e-10, 12).value;
    lo = rc;
  }
  v += integrate_tail(outer, lo, 1e-10).value;
  return kPi * params.lambda * params.delta * v;
}

double lt_interference_pairs(const SuperParams& params,
                             const SignalModel& model, const PathLoss& pl,
                             double s, double rho) {
  return std::exp(-pairs_exponent(params, model, pl, s, rho));
}

double pairs_far_exponent(const SuperParams& params, const SignalModel& model,
                          const PathLoss& pl, double s, double w) {
  pl.validate();
  check_s(s);
  check_rho(w);
  if (s == 0) return 0;
  auto outer = [&](double r) {
    if (r <= 0) return 0.0;
    return r * pair_complement_given_r(model, pl, params.alpha, s, r, 0.0);
  };
  const QuadResult q = integrate_tail(outer, w, 1e-10);
  return kPi * params.lambda * params.delta * q.value;
}

SinglesExponent::SinglesExponent(const SuperParams& params, const PathLoss& pl)
    : coef_(params.singles_intensity() * 2 * kPi),
      beta_(pl.beta),
      p_(pl.p),
      full_(kPi / pl.beta / std::sin(2 * kPi / pl.beta)) {
  pl.validate();
}

double SinglesExponent::operator()(double s, double rho) const {
  if (s <= 0) return 0;
  const double scale = std::pow(s * p_, 1 / beta_);
  const double a = rho / scale;
  double tail;
  if (a <= 2) {
    auto f = [&](double u) { return u / (1 + std::pow(u, beta_)); };
    tail = full_ - boost::math::quadrature::gauss<double, 30>::integrate(f, 0.0, a);
  } else {
    // Expand 1 / (1 + u^-beta) for u > 2.
    const double ab = std::pow(a, -beta_);
    double term = std::pow(a, 2 - beta_);
    tail = 0;
    for (int k = 0; k < 60; ++k) {
      const double add = term / (k * beta_ + beta_ - 2);
      tail += (k % 2 == 0) ? add : -add;
      term *= ab;
      if (term < 1e-17 * tail) break;
    }
  }
  return coef_ * scale * scale * tail;
}

PairsExponentTable::PairsExponentTable(const SuperParams& params,
                                       const SignalModel& model,
                                       const PathLoss& pl, double rho_max)
    : params_(params), model_(model), pl_(pl) {
  pl.validate();
  if (!(rho_max > 0)) throw ValidationError("PairsExponentTable: rho_max must be positive");
  log_s0_ = std::log(1e-12);
  const double log_s1 = std::log(1e8);
  ds_ = 0.2;
  ns_ = static_cast<std::size_t>(std::ceil((log_s1 - log_s0_) / ds_)) + 1;

  // rho nodes are uniform in x(rho) = log(rho + rho_min) + rho / len: geometric
  // near zero, where log E grows like -2 log rho for small s, and spaced
  // len * dx further out.
  rho_min_ = 1e-3 * params.alpha;
  dx_ = 0.15;
  len_ = 0.25 * params.alpha / dx_;
  const double x_end = x_of(rho_max);
  const auto nrho = static_cast<std::size_t>(std::ceil((x_end - x_of(0)) / dx_)) + 1;
  rho_nodes_.resize(nrho);
  for (std::size_t k = 0; k < nrho; ++k) {
    const double x = x_of(0) + dx_ * static_cast<double>(k);
    double rho = k == 0 ? 0.0 : rho_nodes_[k - 1];
    for (int it = 0; it < 60; ++it) {
      const double step = (x_of(rho) - x) / (1 / (rho + rho_min_) + 1 / len_);
      rho = std::max(rho - step, 0.5 * rho);
      if (std::abs(step) < 1e-15 * (rho + rho_min_)) break;
    }
    rho_nodes_[k] = k == 0 ? 0.0 : rho;
  }
  log_e_.resize(ns_ * nrho);

  // A cell (a, b) covers r in [rho_a, rho_a+1), z in [rho_b, rho_b+1) and
  // contributes to every row i <= min(a, b). Cells farther apart than the
  // Rice window carry mass below 1e-12. Past the last node, r is integrated
  // directly with daughters unrestricted.
  using GL = boost::math::quadrature::gauss<double, 6>;
  std::vector<double> gx, gw;
  for (std::size_t k = 0; k < GL::abscissa().size(); ++k) {
    const double x = GL::abscissa()[k], w = GL::weights()[k];
    gx.push_back(x);
    gw.push_back(w);
    if (x != 0) {
      gx.push_back(-x);
      gw.push_back(w);
    }
  }
  const double width = kRiceWidth * params.alpha;
  std::vector<double> edge = rho_nodes_;
  while (edge.back() < rho_max + width) edge.push_back(edge.back() + len_ * dx_);
  const std::size_t ncell_r = edge.size() - 1;
  while (edge.back() < rho_max + 2 * width) edge.push_back(edge.back() + len_ * dx_);
  const std::size_t ncell = edge.size() - 1;
  const bool fast = model.kind == ModelKind::single || model.kind == ModelKind::nsc ||
                    model.kind == ModelKind::off || model.kind == ModelKind::max;
  struct Node {
    double w, m1, m2;
    std::uint32_t row;
  };
  std::vector<Node> nodes;
  std::vector<std::pair<double, double>> at;  // (r, z) for generic models
  for (std::size_t a = 0; a < ncell_r; ++a) {
    for (std::size_t b = 0; b < ncell; ++b) {
      if (edge[b] > edge[a + 1] + width || edge[a] > edge[b + 1] + width) continue;
      const auto row = static_cast<std::uint32_t>(std::min({a, b, nrho - 1}));
      const double hr = edge[a + 1] - edge[a], hz = edge[b + 1] - edge[b];
      for (std::size_t i = 0; i < gx.size(); ++i) {
        const double r = edge[a] + 0.5 * hr * (gx[i] + 1);
        for (std::size_t j = 0; j < gx.size(); ++j) {
          const double z = edge[b] + 0.5 * hz * (gx[j] + 1);
          const double w = 0.25 * hr * hz * gw[i] * gw[j] * r * rice_pdf(z, r, params.alpha);
          if (w < 1e-300) continue;
          nodes.push_back({w, pl.rate_at(r), pl.rate_at(z), row});
          if (!fast) at.emplace_back(r, z);
        }
      }
    }
  }
  const double r_far = edge[ncell_r];
  const double c = kPi * params.lambda * params.delta;
  std::vector<double> acc(nrho);
  for (std::size_t is = 0; is < ns_; ++is) {
    const double s = std::exp(log_s0_ + ds_ * static_cast<double>(is));
    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const Node& n = nodes[k];
      const double ca = s / (n.m1 + s), cb = s / (n.m2 + s);
      double comp;
      switch (model.kind) {
        case ModelKind::single: comp = ca; break;
        case ModelKind::nsc: comp = ca + (1 - ca) * cb; break;
        case ModelKind::off: comp = model.q * ca + (1 - model.q) * cb; break;
        case ModelKind::max: comp = ca + cb - s / (n.m1 + n.m2 + s); break;
        default: comp = pair_lt_complement(model, pl, at[k].first, at[k].second, s); break;
      }
      acc[n.row] += n.w * comp;
    }
    const double tail = pairs_far_exponent(params, model, pl, s, r_far);
    double suffix = 0;
    for (std::size_t ir = nrho; ir-- > 0;) {
      suffix += acc[ir];
      log_e_[ir * ns_ + is] = log_clamped(c * suffix + tail);
    }
  }
}

double PairsExponentTable::x_of(double rho) const {
  return std::log(rho + rho_min_) + rho / len_;
}

double PairsExponentTable::operator()(double s, double rho) const {
  if (s <= 0) return 0;
  const std::size_t nrho = rho_nodes_.size();
  const double ls = std::log(s);
  const double xs = (ls - log_s0_) / ds_;
  if (xs < 0 || xs > static_cast<double>(ns_ - 1) || !(rho >= 0) || rho > rho_nodes_.back()) {
    return pairs_exponent(params_, model_, pl_, s, rho);
  }
  const double xr = (x_of(rho) - x_of(0)) / dx_;
  std::size_t is0, ir0;
  double ts, tr, ws[4], wr[4];
  stencil(xs, ns_, is0, ts);
  stencil(xr, nrho, ir0, tr);
  lagrange4(ts, ws);
  lagrange4(tr, wr);
  double v = 0;
  for (int a = 0; a < 4; ++a) {
    double row = 0;
    for (int b = 0; b < 4; ++b) row += ws[b] * log_e_[(ir0 + a) * ns_ + is0 + b];
    v += wr[a] * row;
  }
  return std::exp(v);
}

FarFieldTable::FarFieldTable(const SuperParams& params, const SignalModel& model,
                             const PathLoss& pl, double w)
    : params_(params), model_(model), pl_(pl), w_(w) {
  pl.validate();
  if (!(w > 0)) throw ValidationError("FarFieldTable: radius must be positive");
  log_s0_ = std::log(1e-12);
  ds_ = 0.2;
  const auto n = static_cast<std::size_t>(std::ceil((std::log(1e12) - log_s0_) / ds_)) + 1;
  const SinglesExponent e1(params, pl);
  log_e_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = std::exp(log_s0_ + ds_ * static_cast<double>(k));
    log_e_[k] = log_clamped(e1(s, w) + pairs_far_exponent(params, model, pl, s, w));
  }
}

double FarFieldTable::operator()(double s) const {
  if (s <= 0) return 0;
  const double x = (std::log(s) - log_s0_) / ds_;
  const std::size_t n = log_e_.size();
  if (x < 0 || x > static_cast<double>(n - 1)) {
    return SinglesExponent(params_, pl_)(s, w_) +
           pairs_far_exponent(params_, model_, pl_, s, w_);
  }
  std::size_t i0;
  double t, wts[4];
  stencil(x, n, i0, t);
  lagrange4(t, wts);
  double v = 0;
  for (int b = 0; b < 4; ++b) v += wts[b] * log_e_[i0 + b];
  return std::exp(v);
}

}  // namespace coopgeo
