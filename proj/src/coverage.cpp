// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#include "coopgeo/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include <boost/math/quadrature/gauss.hpp>

#include "coopgeo/error.hpp"
#include "coopgeo/mnnr.hpp"
#include "coopgeo/parallel.hpp"
#include "coopgeo/quadrature.hpp"
#include "coopgeo/special.hpp"
#include "coopgeo/stats.hpp"

namespace coopgeo {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kNoIndex = static_cast<std::size_t>(-1);
// Radius (in scale units) beyond which a Rayleigh law has mass below 1e-14.
const double kRayleighCut = std::sqrt(2 * std::log(1e14));
const double kRiceCut = std::sqrt(-2 * std::log(1e-12));

void check_threshold(double t) {
  if (!(t >= 0) || !std::isfinite(t)) {
    throw ValidationError("threshold must be finite and nonnegative");
  }
}

void check_sigma2(double s2) {
  if (!(s2 >= 0) || !std::isfinite(s2)) {
    throw ValidationError("noise power must be finite and nonnegative");
  }
}

// Laplace transform of the interference from a concrete set of stations,
// averaged over their fading.
class InterfererSet {
 public:
  InterfererSet(const SignalModel& model, const PathLoss& pl)
      : model_(model), pl_(pl) {}

  void clear() {
    single_mu_.clear();
    pair_mu_.clear();
    pair_dist_.clear();
  }
  void add_single(double r) { single_mu_.push_back(pl_.rate_at(r)); }
  void add_pair(double r, double z) {
    pair_mu_.push_back({pl_.rate_at(r), pl_.rate_at(z)});
    pair_dist_.push_back({r, z});
  }

  double lt(double s) const {
    double v = 1;
    for (double mu : single_mu_) v *= mu / (mu + s);
    switch (model_.kind) {
      case ModelKind::nsc:
        for (const auto& [a, b] : pair_mu_) v *= a / (a + s) * (b / (b + s));
        break;
      case ModelKind::off:
        for (const auto& [a, b] : pair_mu_) {
          v *= model_.q * a / (a + s) + (1 - model_.q) * b / (b + s);
        }
        break;
      case ModelKind::max:
        for (const auto& [a, b] : pair_mu_) {
          v *= a / (a + s) + b / (b + s) - (a + b) / (a + b + s);
        }
        break;
      default:
        for (const auto& [r, z] : pair_dist_) v *= pair_lt(model_, pl_, r, z, s);
        break;
    }
    return v;
  }

 private:
  SignalModel model_;
  PathLoss pl_;
  std::vector<double> single_mu_;
  std::vector<std::pair<double, double>> pair_mu_;
  std::vector<std::pair<double, double>> pair_dist_;
};

bool has_tail_form(const SignalModel& m) { return m.kind != ModelKind::ph; }

// One replication's contribution: coverage per threshold and the branch.
struct RepResult {
  std::vector<double> covered;
  int branch = 0;
};

struct Serving {
  bool single = true;
  double r = 0, z = 0;
};

// Evaluates one replication either by conditional expectation or by
// indicator draws.
class RepEvaluator {
 public:
  RepEvaluator(const Scheme& scheme, const PathLoss& pl, double sigma2,
               const std::vector<double>& thresholds, bool conditional,
               const FarFieldTable* far)
      : scheme_(scheme), pl_(pl), sigma2_(sigma2), thresholds_(thresholds),
        conditional_(conditional), far_(far),
        set_(scheme.interfering, pl) {}

  InterfererSet& set() { return set_; }
  bool conditional() const { return conditional_; }

  std::vector<double> evaluate(const Serving& srv) const {
    std::vector<double> out(thresholds_.size());
    const std::vector<TailTerm> terms =
        srv.single ? std::vector<TailTerm>{{1, pl_.rate_at(srv.r)}}
                   : tail_terms(scheme_.serving, pl_, srv.r, srv.z);
    for (std::size_t k = 0; k < thresholds_.size(); ++k) {
      const double t = thresholds_[k];
      double v = 0;
      for (const TailTerm& term : terms) {
        const double s = t * term.d;
        double f = std::exp(-s * sigma2_) * set_.lt(s);
        if (far_ != nullptr) f *= std::exp(-(*far_)(s));
        v += term.c * f;
      }
      out[k] = std::clamp(v, 0.0, 1.0);
    }
    return out;
  }

  std::vector<double> evaluate_draw(double signal, double interference) const {
    std::vector<double> out(thresholds_.size());
    for (std::size_t k = 0; k < thresholds_.size(); ++k) {
      out[k] = signal > thresholds_[k] * (sigma2_ + interference) ? 1.0 : 0.0;
    }
    return out;
  }

 private:
  const Scheme& scheme_;
  PathLoss pl_;
  double sigma2_;
  const std::vector<double>& thresholds_;
  bool conditional_;
  const FarFieldTable* far_;
  InterfererSet set_;
};

CoverageCurve reduce(const std::vector<RepResult>& reps,
                     const std::vector<double>& thresholds, bool branches) {
  CoverageCurve c;
  c.thresholds = thresholds;
  std::vector<MeanAccumulator> acc(thresholds.size());
  std::vector<double> counts(3, 0.0);
  for (const RepResult& r : reps) {
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k].add(r.covered[k]);
    if (r.branch >= 1 && r.branch <= 3) counts[r.branch - 1] += 1;
  }
  for (const MeanAccumulator& a : acc) {
    c.values.push_back(a.mean());
    c.std_error.push_back(a.stderr_of_mean());
  }
  if (branches && !reps.empty()) {
    for (double n : counts) c.branch_fraction.push_back(n / static_cast<double>(reps.size()));
  }
  return c;
}

void check_options(const McOptions& o) {
  if (o.reps < 1) throw ValidationError("Monte Carlo needs at least one replication");
  if (!(o.window_radius >= 0)) throw ValidationError("window radius must be nonnegative");
}

}  // namespace

Association parse_association(std::string_view token) {
  if (token == "fixed") return Association::fixed;
  if (token == "closest") return Association::closest;
  throw ValidationError("unknown association '" + std::string(token) + "'");
}

std::string to_string(Association a) {
  return a == Association::fixed ? "fixed" : "closest";
}

Scheme parse_scheme(std::string_view token) {
  Scheme s;
  s.token = std::string(token);
  if (token == "none") {
    s.cooperative = false;
    s.serving = SignalModel::single();
    s.interfering = SignalModel::single();
    return s;
  }
  if (token == "maxoff") {
    s.serving = SignalModel::max();
    s.interfering = SignalModel::off(0.5);
    return s;
  }
  s.serving = parse_model(token);
  if (s.serving.kind == ModelKind::single) {
    throw ValidationError("scheme 'single' is not a pair rule; use 'none'");
  }
  s.interfering = s.serving;
  return s;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10); }
double linear_to_db(double t) { return 10 * std::log10(t); }

std::vector<double> db_grid(double lo_db, double hi_db, double step) {
  if (!(step > 0) || !(hi_db >= lo_db)) throw ValidationError("db_grid: bad range");
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(std::floor((hi_db - lo_db) / step + 1e-9)) + 1;
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(db_to_linear(lo_db + step * static_cast<double>(k)));
  }
  return out;
}

double coverage_fixed_analytic(const SuperParams& params,
                               const SignalModel& interfering,
                               const PathLoss& pl, double r0, double sigma2,
                               double t) {
  pl.validate();
  check_threshold(t);
  check_sigma2(sigma2);
  if (!(r0 > 0)) throw ValidationError("coverage_fixed_analytic: r0 must be positive");
  const double s = t * pl.rate_at(r0);
  double e = s * sigma2 + singles_exponent(params, pl, s, 0);
  if (params.delta > 0) e += pairs_exponent(params, interfering, pl, s, 0);
  return std::exp(-e);
}

struct ClosestCoverage::Impl {
  // Quadrature node of an expectation over the serving geometry; w carries
  // the density and rule weight, terms the serving tail form.
  struct Node {
    double w;
    double rho_single, rho_pair;
    std::size_t first, count;  // into terms
  };

  SuperParams params;
  Scheme scheme;
  PathLoss pl;
  double sigma2;
  SinglesExponent e1;
  PairsExponentTable e2;
  std::vector<Node> g_nodes, h_nodes, k_nodes;
  std::vector<TailTerm> terms;
  double mass = 0;

  // Scale of the Rayleigh-like product exp(-x^2/2a^2) exp(-x^2/2b^2).
  static double joint_scale(double a, double b) {
    return 1 / std::sqrt(1 / (a * a) + 1 / (b * b));
  }

  // Composite Gauss-Legendre rule on [lo, hi].
  static std::vector<std::pair<double, double>> rule(double lo, double hi, int panels) {
    using GL = boost::math::quadrature::gauss<double, 20>;
    std::vector<std::pair<double, double>> out;
    const double h = (hi - lo) / panels;
    for (int k = 0; k < panels; ++k) {
      const double mid = lo + h * (k + 0.5);
      for (std::size_t i = 0; i < GL::abscissa().size(); ++i) {
        const double x = GL::abscissa()[i], w = GL::weights()[i];
        out.emplace_back(mid + 0.5 * h * x, 0.5 * h * w);
        if (x != 0) out.emplace_back(mid - 0.5 * h * x, 0.5 * h * w);
      }
    }
    return out;
  }

  Impl(const SuperParams& p, const Scheme& s, const PathLoss& l, double s2)
      : params(p), scheme(s), pl(l), sigma2(s2), e1(p, l),
        e2(p, s.interfering, l,
           kRayleighCut * std::max({p.xi, p.zeta, p.daughter_scale()}) +
               kRiceCut * p.alpha) {
    const double xi2 = p.xi * p.xi;
    const double width = kRiceCut * p.alpha;
    constexpr int kOuterPanels = 16;
    constexpr int kInnerPanels = 3;

    // Nearest single serves: density of R1 times P(R2 > r, Z2 > r).
    for (const auto& [r, w] : rule(0, kRayleighCut * joint_scale(p.xi, p.zeta), kOuterPanels)) {
      const double wt = w * rayleigh_pdf(r, p.xi) * nearest_cluster_clear(p, r);
      terms.push_back({1, pl.rate_at(r)});
      g_nodes.push_back({wt, r, r, terms.size() - 1, 1});
    }
    // Nearest parent serves, closer than its daughter: z in [r, r + width].
    for (const auto& [r, wr] : rule(0, kRayleighCut * joint_scale(p.zeta, p.xi), kOuterPanels)) {
      const double outer = wr * rayleigh_pdf(r, p.zeta) * std::exp(-r * r / (2 * xi2));
      for (const auto& [z, wz] : rule(r, r + width, kInnerPanels)) {
        add_pair(h_nodes, outer * wz * rice_pdf(z, r, p.alpha), r, z, r, r);
      }
    }
    // Daughter closest: r in [z, z + width].
    for (const auto& [z, wz] :
         rule(0, kRayleighCut * joint_scale(p.daughter_scale(), p.xi), kOuterPanels)) {
      const double outer = wz * std::exp(-z * z / (2 * xi2));
      for (const auto& [r, wr] : rule(z, z + width, kInnerPanels)) {
        add_pair(k_nodes, outer * wr * rayleigh_pdf(r, p.zeta) * rice_pdf(z, r, p.alpha), r, z,
                 z, r);
      }
    }
    for (const auto* set : {&g_nodes, &h_nodes, &k_nodes}) {
      for (const Node& n : *set) mass += n.w;
    }
  }

  void add_pair(std::vector<Node>& out, double w, double r, double z, double rho_single,
                double rho_pair) {
    if (!(w > 0) || r <= 0 || z <= 0) return;
    const std::size_t first = terms.size();
    for (const TailTerm& t : tail_terms(scheme.serving, pl, r, z)) terms.push_back(t);
    out.push_back({w, rho_single, rho_pair, first, terms.size() - first});
  }

  double interference(double s, double rho_single, double rho_pair) const {
    if (s <= 0) return 1;
    return std::exp(-s * sigma2 - e1(s, rho_single) - e2(s, rho_pair));
  }

  double sum(const std::vector<Node>& nodes, double t) const {
    double v = 0;
    for (const Node& n : nodes) {
      double f = 0;
      for (std::size_t k = n.first; k < n.first + n.count; ++k) {
        f += terms[k].c * interference(t * terms[k].d, n.rho_single, n.rho_pair);
      }
      v += n.w * f;
    }
    return v;
  }

  ClosestTerms eval(double t) const {
    ClosestTerms out;
    out.g = sum(g_nodes, t);
    out.h = sum(h_nodes, t);
    out.k = sum(k_nodes, t);
    out.total = out.g + out.h + out.k;
    // At T = 0 the three expectations partition the probability space.
    out.residual = std::abs(1 - mass);
    return out;
  }
};

ClosestCoverage::ClosestCoverage(const SuperParams& params, const Scheme& scheme,
                                 const PathLoss& pl, double sigma2) {
  pl.validate();
  check_sigma2(sigma2);
  if (!scheme.cooperative) {
    throw ValidationError("closest-cluster coverage needs a cooperative scheme");
  }
  if (!has_tail_form(scheme.serving) || !has_tail_form(scheme.interfering)) {
    throw UnsupportedError("closest-cluster coverage needs tail-form signal models");
  }
  impl_ = std::make_unique<Impl>(params, scheme, pl, sigma2);
}

ClosestCoverage::~ClosestCoverage() = default;
ClosestCoverage::ClosestCoverage(ClosestCoverage&&) noexcept = default;

ClosestTerms ClosestCoverage::operator()(double t) const {
  check_threshold(t);
  ClosestTerms out = impl_->eval(t);
  if (out.residual > 1e-4) {
    throw NumericalError("closest-cluster coverage: quadrature did not converge",
                         out.residual);
  }
  return out;
}

double coverage_closest_analytic(const SuperParams& params, const Scheme& scheme,
                                 const PathLoss& pl, double sigma2, double t) {
  return ClosestCoverage(params, scheme, pl, sigma2)(t).total;
}

CoverageCurve coverage_curve_analytic(const SuperParams& params,
                                      const Scheme& scheme, const PathLoss& pl,
                                      Association association, double r0,
                                      double sigma2,
                                      const std::vector<double>& thresholds) {
  CoverageCurve c;
  c.thresholds = thresholds;
  c.meta.model = "superposition";
  c.meta.method = "analytic";
  c.meta.association = to_string(association);
  c.meta.scheme = scheme.token;
  c.meta.lambda = params.lambda;
  c.meta.beta = pl.beta;
  c.meta.p = pl.p;
  c.meta.sigma2 = sigma2;
  if (association == Association::fixed) {
    c.meta.r0 = r0;
    for (double t : thresholds) {
      c.values.push_back(coverage_fixed_analytic(params, scheme.interfering, pl, r0, sigma2, t));
      c.std_error.push_back(0);
    }
    return c;
  }
  const ClosestCoverage cov(params, scheme, pl, sigma2);
  for (double t : thresholds) {
    c.values.push_back(std::clamp(cov(t).total, 0.0, 1.0));
    c.std_error.push_back(0);
  }
  return c;
}

namespace {

double default_window(double lambda, bool conditional) {
  return (conditional ? 12.0 : 20.0) / std::sqrt(lambda);
}

}  // namespace

CoverageCurve mc_coverage_superposition(const SuperParams& params,
                                        const Scheme& scheme,
                                        const PathLoss& pl,
                                        Association association, double r0,
                                        double sigma2,
                                        const std::vector<double>& thresholds,
                                        const McOptions& options) {
  pl.validate();
  check_sigma2(sigma2);
  check_options(options);
  if (!scheme.cooperative) {
    throw ValidationError("superposition coverage needs a cooperative scheme");
  }
  if (association == Association::fixed && !(r0 > 0)) {
    throw ValidationError("fixed association needs r0 > 0");
  }
  const bool conditional = options.conditional && has_tail_form(scheme.serving) &&
                           has_tail_form(scheme.interfering);
  const double w = options.window_radius > 0 ? options.window_radius
                                             : default_window(params.lambda, conditional);
  std::optional<FarFieldTable> far;
  if (conditional && options.far_field) far.emplace(params, scheme.interfering, pl, w);
  const Window window = Window::disc({0, 0}, w);

  auto run = [&](std::size_t rep) {
    Rng rng(options.seed, rep);
    const MarkedConfiguration m = sample_superposition(params, window, rng);
    RepEvaluator ev(scheme, pl, sigma2, thresholds, conditional, far ? &*far : nullptr);

    Serving srv;
    int branch = 0;
    double rho_single = 0, rho_pair = 0;
    std::size_t skip_single = kNoIndex, skip_parent = kNoIndex;
    if (association == Association::fixed) {
      srv.r = r0;
    } else {
      double r1 = kInf, r2 = kInf, z2 = kInf;
      for (std::size_t i = 0; i < m.singles.size(); ++i) {
        const double r = m.singles.atoms[i].norm();
        if (r < r1) { r1 = r; skip_single = i; }
      }
      for (std::size_t j = 0; j < m.parents.size(); ++j) {
        const double r = m.parents.atoms[j].norm();
        if (r < r2) { r2 = r; skip_parent = j; }
      }
      if (skip_parent != kNoIndex) z2 = m.daughters[skip_parent].norm();
      if (r1 < std::min(r2, z2)) {
        branch = 1;
        srv.r = r1;
        rho_single = rho_pair = r1;
        skip_parent = kNoIndex;
      } else {
        branch = r2 < std::min(r1, z2) ? 2 : 3;
        srv.single = false;
        srv.r = r2;
        srv.z = z2;
        rho_single = branch == 2 ? r2 : z2;
        rho_pair = r2;
        skip_single = kNoIndex;
      }
    }

    RepResult out;
    out.branch = branch;
    if (conditional) {
      InterfererSet& set = ev.set();
      for (std::size_t i = 0; i < m.singles.size(); ++i) {
        const double r = m.singles.atoms[i].norm();
        if (i != skip_single && r > rho_single) set.add_single(r);
      }
      for (std::size_t j = 0; j < m.parents.size(); ++j) {
        const double r = m.parents.atoms[j].norm();
        const double z = m.daughters[j].norm();
        if (j != skip_parent && r > rho_pair && z > rho_pair) set.add_pair(r, z);
      }
      out.covered = ev.evaluate(srv);
    } else {
      double interference = 0;
      for (std::size_t i = 0; i < m.singles.size(); ++i) {
        const double r = m.singles.atoms[i].norm();
        if (i != skip_single && r > rho_single) interference += single_signal(pl, r, rng);
      }
      for (std::size_t j = 0; j < m.parents.size(); ++j) {
        const double r = m.parents.atoms[j].norm();
        const double z = m.daughters[j].norm();
        if (j != skip_parent && r > rho_pair && z > rho_pair) {
          interference += pair_signal(scheme.interfering, pl, r, z, rng);
        }
      }
      const double signal = srv.single ? single_signal(pl, srv.r, rng)
                                       : pair_signal(scheme.serving, pl, srv.r, srv.z, rng);
      out.covered = ev.evaluate_draw(signal, interference);
    }
    return out;
  };

  const auto reps = replicate<RepResult>(options.reps, options.workers, run);
  CoverageCurve c = reduce(reps, thresholds, association == Association::closest);
  c.meta.model = "superposition";
  c.meta.method = "mc";
  c.meta.association = to_string(association);
  c.meta.scheme = scheme.token;
  c.meta.lambda = params.lambda;
  c.meta.beta = pl.beta;
  c.meta.p = pl.p;
  c.meta.sigma2 = sigma2;
  c.meta.r0 = association == Association::fixed ? r0 : 0;
  c.meta.seed = options.seed;
  c.meta.reps = options.reps;
  c.meta.window_radius = w;
  return c;
}

CoverageCurve mc_coverage_mnnr(double lambda, const Scheme& scheme,
                               const PathLoss& pl, Association association,
                               double r0, double sigma2,
                               const std::vector<double>& thresholds,
                               const McOptions& options) {
  pl.validate();
  check_sigma2(sigma2);
  check_options(options);
  if (association == Association::fixed && !(r0 > 0)) {
    throw ValidationError("fixed association needs r0 > 0");
  }
  const SuperParams params = derive_params(lambda);
  const bool conditional = options.conditional && has_tail_form(scheme.serving) &&
                           has_tail_form(scheme.interfering);
  const double w = options.window_radius > 0 ? options.window_radius
                                             : default_window(lambda, conditional);
  std::optional<FarFieldTable> far;
  if (conditional && options.far_field) {
    // Far field approximated by the intensity-matched superposition; with
    // no cooperation every station is a single.
    SuperParams fp = params;
    if (!scheme.cooperative) fp.delta = 0;
    far.emplace(fp, scheme.interfering, pl, w);
  }
  const Window window = Window::disc({0, 0}, w);

  auto run = [&](std::size_t rep) {
    Rng rng(options.seed, rep);
    const Configuration c = sample_ppp(lambda, window, rng);
    Partition part;
    if (scheme.cooperative) {
      part = mnnr_partition(c);
    } else {
      part.partner.assign(c.size(), Partition::kNone);
      for (std::size_t i = 0; i < c.size(); ++i) part.singles.push_back(i);
    }
    RepEvaluator ev(scheme, pl, sigma2, thresholds, conditional, far ? &*far : nullptr);

    Serving srv;
    std::size_t serve_a = kNoIndex, serve_b = kNoIndex;
    if (association == Association::fixed) {
      srv.r = r0;
    } else {
      double best = kInf;
      for (std::size_t i = 0; i < c.size(); ++i) {
        const double r = c.atoms[i].norm();
        if (r < best) { best = r; serve_a = i; }
      }
      if (serve_a == kNoIndex) throw NumericalError("mc_coverage_mnnr: empty window", 0);
      srv.r = best;
      if (part.is_paired(serve_a)) {
        serve_b = static_cast<std::size_t>(part.partner[serve_a]);
        srv.single = false;
        srv.z = c.atoms[serve_b].norm();
      }
    }

    RepResult out;
    auto serving_atom = [&](std::size_t i) { return i == serve_a || i == serve_b; };
    if (conditional) {
      InterfererSet& set = ev.set();
      for (std::size_t i : part.singles) {
        if (!serving_atom(i)) set.add_single(c.atoms[i].norm());
      }
      for (const auto& [i, j] : part.pairs) {
        if (!serving_atom(i)) set.add_pair(c.atoms[i].norm(), c.atoms[j].norm());
      }
      out.covered = ev.evaluate(srv);
    } else {
      double interference = 0;
      for (std::size_t i : part.singles) {
        if (!serving_atom(i)) interference += single_signal(pl, c.atoms[i].norm(), rng);
      }
      for (const auto& [i, j] : part.pairs) {
        if (!serving_atom(i)) {
          interference += pair_signal(scheme.interfering, pl, c.atoms[i].norm(),
                                      c.atoms[j].norm(), rng);
        }
      }
      const double signal = srv.single ? single_signal(pl, srv.r, rng)
                                       : pair_signal(scheme.serving, pl, srv.r, srv.z, rng);
      out.covered = ev.evaluate_draw(signal, interference);
    }
    return out;
  };

  const auto reps = replicate<RepResult>(options.reps, options.workers, run);
  CoverageCurve cc = reduce(reps, thresholds, false);
  cc.meta.model = "mnnr";
  cc.meta.method = "mc";
  cc.meta.association = to_string(association);
  cc.meta.scheme = scheme.token;
  cc.meta.lambda = lambda;
  cc.meta.beta = pl.beta;
  cc.meta.p = pl.p;
  cc.meta.sigma2 = sigma2;
  cc.meta.r0 = association == Association::fixed ? r0 : 0;
  cc.meta.seed = options.seed;
  cc.meta.reps = options.reps;
  cc.meta.window_radius = w;
  return cc;
}

double baseline_nocoop(double lambda, const PathLoss& pl, Association association,
                       double r0, double t) {
  pl.validate();
  check_threshold(t);
  if (t == 0) return 1;
  const double b = pl.beta;
  if (association == Association::fixed) {
    if (!(r0 > 0)) throw ValidationError("baseline_nocoop: r0 must be positive");
    if (!(lambda > 0)) throw ValidationError("baseline_nocoop: lambda must be positive");
    return std::exp(-lambda * kPi * r0 * r0 * std::pow(t, 2 / b) * (2 * kPi / b) /
                    std::sin(2 * kPi / b));
  }
  const double lo = std::pow(t, -2 / b);
  const QuadResult q =
      integrate_tail([&](double u) { return 1 / (1 + std::pow(u, b / 2)); }, lo, 1e-12);
  return 1 / (1 + std::pow(t, 2 / b) * q.value);
}

CoverageCurve coverage_baseline_nocoop(double lambda, const PathLoss& pl,
                                       const std::vector<double>& thresholds,
                                       Association association, double r0) {
  CoverageCurve c;
  c.thresholds = thresholds;
  for (double t : thresholds) {
    c.values.push_back(baseline_nocoop(lambda, pl, association, r0, t));
    c.std_error.push_back(0);
  }
  c.meta.model = "baseline";
  c.meta.method = "analytic";
  c.meta.association = to_string(association);
  c.meta.scheme = "none";
  c.meta.lambda = lambda;
  c.meta.beta = pl.beta;
  c.meta.p = pl.p;
  c.meta.r0 = association == Association::fixed ? r0 : 0;
  return c;
}

double peak_gain(const CoverageCurve& a, const CoverageCurve& b) {
  if (a.values.size() != b.values.size()) throw ValidationError("peak_gain: grids differ");
  double g = -kInf;
  for (std::size_t k = 0; k < a.values.size(); ++k) g = std::max(g, a.values[k] - b.values[k]);
  return g;
}

double mean_gain(const CoverageCurve& a, const CoverageCurve& b, double lo, double hi) {
  if (a.values.size() != b.values.size()) throw ValidationError("mean_gain: grids differ");
  double sum = 0;
  std::size_t n = 0;
  for (std::size_t k = 0; k < a.values.size(); ++k) {
    if (b.values[k] >= lo && b.values[k] <= hi) {
      sum += a.values[k] - b.values[k];
      ++n;
    }
  }
  if (n == 0) throw ValidationError("mean_gain: no thresholds in the baseline range");
  return sum / static_cast<double>(n);
}

}  // namespace coopgeo
