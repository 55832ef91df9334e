// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. Fixed seeds throughout.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "coopgeo/coverage.hpp"
#include "coopgeo/geometry.hpp"
#include "coopgeo/interference.hpp"
#include "coopgeo/mnnr.hpp"
#include "coopgeo/parallel.hpp"
#include "coopgeo/pointproc.hpp"
#include "coopgeo/quadrature.hpp"
#include "coopgeo/special.hpp"
#include "coopgeo/stats.hpp"
#include "coopgeo/superposition.hpp"

using namespace coopgeo;

namespace {

int g_failed = 0;
const unsigned kWorkers = default_workers();

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void run(const char* name, const std::function<Outcome()>& check) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s %-28s %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
  std::fflush(stdout);
  if (!o.pass) ++g_failed;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Estimate paired_fraction(double lambda, double side, double margin, std::size_t reps,
                         std::uint64_t seed) {
  const Window w = Window::square(side);
  const auto vals = replicate<double>(reps, kWorkers, [&](std::size_t k) {
    Rng rng(seed, k);
    const Configuration c = sample_ppp(lambda, w, rng);
    return fraction_paired(mnnr_partition(c), interior_mask(c, margin));
  });
  MeanAccumulator acc;
  for (double v : vals) acc.add(v);
  return make_estimate(acc, seed);
}

Outcome delta_constant() {
  const auto t0 = std::chrono::steady_clock::now();
  const Estimate e = paired_fraction(0.25, 100, 6, 50, 7);
  const double secs = seconds_since(t0);
  return {std::abs(e.estimate - 0.6215) <= 0.005 && secs < 60,
          fmt("fraction=%.4f+-%.4f target 0.6215+-0.005, %.1fs", e.estimate, e.std_error, secs)};
}

Outcome lambda_invariance() {
  const Estimate lo = paired_fraction(0.1, 100, default_margin(0.1), 50, 8);
  const Estimate hi = paired_fraction(1.0, 100, default_margin(1.0), 50, 9);
  const bool ok = std::abs(lo.estimate - 0.6215) <= 0.01 && std::abs(hi.estimate - 0.6215) <= 0.01;
  return {ok, fmt("lambda=0.1: %.4f, lambda=1: %.4f", lo.estimate, hi.estimate)};
}

Outcome voronoi_shares() {
  const double lambda = 0.25;
  const Window w = Window::square(100);
  const std::size_t reps = 40, probes = 20000;
  const auto shares = replicate<double>(reps, kWorkers, [&](std::size_t k) {
    Rng rng(21, k);
    const Configuration c = sample_ppp(lambda, w, rng);
    return voronoi_share_pairs(c, mnnr_partition(c), probes, rng, default_margin(lambda)).pairs;
  });
  MeanAccumulator acc;
  for (double v : shares) acc.add(v);
  const auto t0 = std::chrono::steady_clock::now();
  const QuadResult integral = voronoi_pair_integral(lambda);
  const double secs = seconds_since(t0);
  const double p = acc.mean();
  const bool ok = std::abs(p - 0.5398) <= 0.01 && std::abs((1 - p) - 0.4602) <= 0.01 &&
                  std::abs(integral.value - p) <= 0.01 &&
                  std::abs(integral.value - 0.5398) <= 0.01 && secs < 600;
  return {ok, fmt("probe=%.4f+-%.4f complement=%.4f integral=%.5f (%.1fs)", p,
                  acc.stderr_of_mean(), 1 - p, integral.value, secs)};
}

Outcome pair_distance_law() {
  const double lambda = 0.25;
  const Window w = Window::square(100);
  std::vector<double> d;
  for (std::size_t k = 0; d.size() < 10000; ++k) {
    Rng rng(31, k);
    const Configuration c = sample_ppp(lambda, w, rng);
    const auto rep = pair_distances(c, mnnr_partition(c), interior_mask(c, default_margin(lambda)));
    d.insert(d.end(), rep.begin(), rep.end());
  }
  d.resize(10000);
  const double ks = ks_statistic(d, [&](double r) { return analytic_nn_pairs(r, lambda); });
  return {ks < 0.02, fmt("KS=%.4f over %zu pairs (limit 0.02)", ks, d.size())};
}

Outcome rice_joint_density() {
  const SuperParams sp = derive_params(0.25);
  // Daughter radius given parent radius, by the probability integral transform.
  std::vector<double> u;
  for (std::size_t k = 0; u.size() < 20000; ++k) {
    Rng rng(41, k);
    const MarkedConfiguration m = sample_superposition(sp, Window::square(60), rng);
    for (std::size_t j = 0; j < m.parents.size() && u.size() < 20000; ++j) {
      u.push_back(rice_cdf(m.daughters[j].norm(), m.parents.atoms[j].norm(), sp.alpha));
    }
  }
  const double ks_rice = ks_statistic(u, [](double x) { return std::clamp(x, 0.0, 1.0); });
  const double crit_rice = ks_critical(u.size(), 0.01);

  // Radius of the nearest parent's daughter, one draw per replication.
  const std::size_t n = 5000;
  const auto z2 = replicate<double>(n, kWorkers, [&](std::size_t k) {
    Rng rng(42, k);
    const MarkedConfiguration m = sample_superposition(sp, Window::disc({0, 0}, 15), rng);
    double best = INFINITY, z = 0;
    for (std::size_t j = 0; j < m.parents.size(); ++j) {
      const double r = m.parents.atoms[j].norm();
      if (r < best) {
        best = r;
        z = m.daughters[j].norm();
      }
    }
    return z;
  });
  const double scale = sp.daughter_scale();
  const double ks_z2 = ks_statistic(z2, [&](double z) { return rayleigh_cdf(z, scale); });
  const double crit_z2 = ks_critical(n, 0.01);

  const double mass = integrate(
                          [&](double r) {
                            const double lo = std::max(0.0, r - 10 * sp.alpha);
                            return integrate([&](double z) { return joint_density_r2_z2(sp, r, z); },
                                             lo, r + 10 * sp.alpha, 1e-10)
                                .value;
                          },
                          0.0, 12 * sp.zeta, 1e-10)
                          .value;
  const bool ok = ks_rice < crit_rice && ks_z2 < crit_z2 && std::abs(mass - 1) <= 1e-4;
  return {ok, fmt("rice KS=%.4f (crit %.4f), Z2 KS=%.4f (crit %.4f), joint mass=%.8f", ks_rice,
                  crit_rice, ks_z2, crit_z2, mass)};
}

Outcome expected_interference() {
  const double lambda = 0.25;
  const PathLoss pl = make_path_loss(1, 4);
  const std::size_t reps = 4000;
  const Window w = Window::disc({0, 0}, 60);
  struct Row {
    double r, mc1, mc2nsc, mc2max;
  };
  const std::vector<double> radii = {1, 2, 3};
  const SignalModel nsc = SignalModel::nsc(), mx = SignalModel::max();
  std::vector<MeanAccumulator> a1(3), an(3), am(3);
  const auto samples = replicate<std::vector<double>>(reps, kWorkers, [&](std::size_t k) {
    Rng rng(51, k);
    const Configuration c = sample_ppp(lambda, w, rng);
    const Partition p = mnnr_partition(c);
    std::vector<double> out;
    for (double R : radii) {
      Rng fade_n = rng.split(1), fade_m = rng.split(1);  // common fading draws
      const InterferenceSample sn = mc_interference(c, p, nsc, pl, R, fade_n);
      const InterferenceSample sm = mc_interference(c, p, mx, pl, R, fade_m);
      out.insert(out.end(), {sn.singles, sn.pairs, sm.pairs});
    }
    return out;
  });
  for (const auto& s : samples) {
    for (std::size_t i = 0; i < 3; ++i) {
      a1[i].add(s[3 * i]);
      an[i].add(s[3 * i + 1]);
      am[i].add(s[3 * i + 2]);
    }
  }
  bool ok = true;
  double worst = 0;
  std::string detail;
  for (std::size_t i = 0; i < 3; ++i) {
    const double R = radii[i];
    const double e1 = expected_interference_singles(lambda, pl, R);
    const double en = expected_interference_pairs(lambda, nsc, pl, R).value;
    const double em = expected_interference_pairs(lambda, mx, pl, R).value;
    for (const auto& [mc, th] : {std::pair{a1[i].mean(), e1}, std::pair{an[i].mean(), en},
                                 std::pair{am[i].mean(), em}}) {
      worst = std::max(worst, std::abs(mc - th) / th);
    }
    if (!(em <= en) || !(am[i].mean() <= an[i].mean())) ok = false;
    detail += fmt("R=%g I1 %.4f/%.4f NSC %.4f/%.4f MAX %.4f/%.4f; ", R, a1[i].mean(), e1,
                  an[i].mean(), en, am[i].mean(), em);
  }
  ok = ok && worst < 0.03;
  return {ok, fmt("worst rel err %.4f; ", worst) + detail};
}

Outcome lt_closed_form() {
  const SuperParams sp = derive_params(0.25);
  const PathLoss pl = make_path_loss(1, 4);
  double worst = 0;
  for (double s : {0.1, 1.0, 10.0}) {
    const double quad = lt_interference_singles(sp, pl, s, 0);
    const double closed = lt_singles_closed_form(sp, pl, s);
    worst = std::max(worst, std::abs(quad - closed) / closed);
  }
  // Monte Carlo transform of the sampled superposition at s = 1, rho = 0.
  const SignalModel model = SignalModel::nsc();
  const double s = 1;
  const double analytic =
      lt_interference_singles(sp, pl, s, 0) * lt_interference_pairs(sp, model, pl, s, 0);
  const std::size_t reps = 10000;
  const Window w = Window::disc({0, 0}, 40);
  const auto vals = replicate<double>(reps, kWorkers, [&](std::size_t k) {
    Rng rng(61, k);
    const MarkedConfiguration m = sample_superposition(sp, w, rng);
    double v = 1;
    for (const Point2& x : m.singles.atoms) v *= single_lt(pl, x.norm(), s);
    for (std::size_t j = 0; j < m.parents.size(); ++j) {
      v *= pair_lt(model, pl, m.parents.atoms[j].norm(), m.daughters[j].norm(), s);
    }
    return v;
  });
  MeanAccumulator acc;
  for (double v : vals) acc.add(v);
  const bool ok = worst < 1e-6 && std::abs(acc.mean() - analytic) < 0.005;
  return {ok, fmt("closed-form rel err %.2e; MC %.4f+-%.4f vs analytic %.4f", worst, acc.mean(),
                  acc.stderr_of_mean(), analytic)};
}

Outcome laplace_window() {
  const double lambda = 0.25;
  const Window w = Window::square(std::sqrt(3 / lambda));  // E[N] = 3
  const SiteFunction f = [](Point2 x) { return 0.1 * x.norm2(); };
  std::string detail;
  bool ok = true;
  for (Role role : {Role::single, Role::paired}) {
    Rng rng(71, role == Role::single ? 1 : 2);
    const LaplaceSeries series = laplace_window_series(lambda, w, f, role, 15, 40000, rng);
    const Estimate direct =
        direct_window_laplace(lambda, w, f, role, 200000, role == Role::single ? 72 : 73, kWorkers);
    const double rel = std::abs(series.value - direct.estimate) / direct.estimate;
    ok = ok && rel < 0.02;
    detail += fmt("%s series %.4f direct %.4f (rel %.4f); ",
                  role == Role::single ? "singles" : "pairs", series.value, direct.estimate, rel);
  }
  return {ok, detail};
}

double max_abs_gap(const CoverageCurve& a, const CoverageCurve& b) {
  double g = 0;
  for (std::size_t k = 0; k < a.values.size(); ++k) {
    g = std::max(g, std::abs(a.values[k] - b.values[k]));
  }
  return g;
}

Outcome coverage_validation() {
  const SuperParams sp = derive_params(0.25);
  const std::vector<double> ts = db_grid();
  McOptions mc;
  mc.reps = 20000;
  mc.seed = 81;
  mc.workers = kWorkers;
  double worst = 0;
  std::string where;
  for (double beta : {2.5, 4.0}) {
    const PathLoss pl = make_path_loss(1, beta);
    for (const char* tok : {"nsc", "off", "max"}) {
      const Scheme sc = parse_scheme(tok);
      for (Association as : {Association::fixed, Association::closest}) {
        const CoverageCurve an = coverage_curve_analytic(sp, sc, pl, as, 1, 0, ts);
        const CoverageCurve sim = mc_coverage_superposition(sp, sc, pl, as, 1, 0, ts, mc);
        const double g = max_abs_gap(an, sim);
        if (g > worst) {
          worst = g;
          where = fmt("beta=%g %s %s", beta, tok, to_string(as).c_str());
        }
      }
    }
  }
  return {worst <= 0.015, fmt("max |analytic - MC| = %.4f at %s (limit 0.015)", worst, where.c_str())};
}

Outcome superposition_closeness() {
  const SuperParams sp = derive_params(0.25);
  const PathLoss pl = make_path_loss(1, 3);
  const std::vector<double> ts = db_grid();
  McOptions mc;
  mc.reps = 20000;
  mc.seed = 91;
  mc.workers = kWorkers;
  bool below = true;
  double worst_fixed = 0, worst_closest = 0;
  for (const char* tok : {"nsc", "off", "max"}) {
    const Scheme sc = parse_scheme(tok);
    for (Association as : {Association::fixed, Association::closest}) {
      const CoverageCurve an = coverage_curve_analytic(sp, sc, pl, as, 1, 0, ts);
      const CoverageCurve nn = mc_coverage_mnnr(0.25, sc, pl, as, 1, 0, ts, mc);
      const double g = max_abs_gap(an, nn);
      if (as == Association::fixed) {
        worst_fixed = std::max(worst_fixed, g);
      } else {
        worst_closest = std::max(worst_closest, g);
        for (std::size_t k = 0; k < ts.size(); ++k) {
          if (an.values[k] > nn.values[k] + 2 * nn.std_error[k]) below = false;
        }
      }
    }
  }
  const bool ok = worst_fixed <= 0.03 && worst_closest <= 0.03 && below;
  return {ok, fmt("max gap fixed %.4f, closest %.4f (limit 0.03); superposition <= mnnr "
                  "(closest): %s",
                  worst_fixed, worst_closest, below ? "yes" : "no")};
}

Outcome cooperation_gains() {
  const PathLoss pl = make_path_loss(1, 3);
  const std::vector<double> ts = db_grid();
  McOptions mc;
  mc.reps = 20000;
  mc.seed = 101;
  mc.workers = kWorkers;
  const CoverageCurve base_closest = coverage_baseline_nocoop(0.25, pl, ts);
  const CoverageCurve base_fixed =
      coverage_baseline_nocoop(0.25, pl, ts, Association::fixed, 1);
  const double g_maxoff = peak_gain(
      mc_coverage_mnnr(0.25, parse_scheme("maxoff"), pl, Association::closest, 1, 0, ts, mc),
      base_closest);
  const double g_nsc = peak_gain(
      mc_coverage_mnnr(0.25, parse_scheme("nsc"), pl, Association::closest, 1, 0, ts, mc),
      base_closest);
  const double g_off = mean_gain(
      mc_coverage_mnnr(0.25, parse_scheme("off"), pl, Association::fixed, 1, 0, ts, mc),
      base_fixed);
  const bool ok = std::abs(g_maxoff - 0.15) <= 0.03 && std::abs(g_nsc - 0.09) <= 0.03 &&
                  std::abs(g_off - 0.10) <= 0.03;
  return {ok, fmt("maxoff closest peak %.3f (0.15), nsc closest peak %.3f (0.09), off fixed "
                  "mid-T %.3f (0.10)",
                  g_maxoff, g_nsc, g_off)};
}

Outcome j_function_signs() {
  const double lambda = 0.25;
  const double margin = default_margin(lambda);
  const Window w = Window::square(100);
  const std::vector<double> grid = linear_grid(0, 4, 41);
  const std::size_t reps = 40;
  struct Rep {
    EmpiricalCdf g1, f1, g2, f2;
  };
  const auto reps_out = replicate<Rep>(reps, kWorkers, [&](std::size_t k) {
    Rng rng(111, k);
    const Configuration c = sample_ppp(lambda, w, rng);
    const Partition p = mnnr_partition(c);
    const InteriorMask mask = interior_mask(c, margin);
    Rep r;
    r.g1 = empirical_cdf(same_role_nn_distances(c, p, Role::single, mask), grid);
    r.g2 = empirical_cdf(same_role_nn_distances(c, p, Role::paired, mask), grid);
    r.f1 = empirical_es(c, p, Role::single, grid, 5000, rng, margin);
    r.f2 = empirical_es(c, p, Role::paired, grid, 5000, rng, margin);
    return r;
  });
  std::vector<EmpiricalCdf> g1, f1, g2, f2;
  for (const Rep& r : reps_out) {
    g1.push_back(r.g1);
    f1.push_back(r.f1);
    g2.push_back(r.g2);
    f2.push_back(r.f2);
  }
  const JCurve j1 = j_function(average_cdfs(g1), average_cdfs(f1));
  const JCurve j2 = j_function(average_cdfs(g2), average_cdfs(f2));
  bool ok = !j1.values.empty() && !j2.values.empty();
  double min1 = INFINITY, max2 = -INFINITY;
  for (std::size_t k = 0; k < j1.values.size(); ++k) {
    ok = ok && j1.values[k] >= 1 - 2 * j1.std_error[k];
    min1 = std::min(min1, j1.values[k] + 2 * j1.std_error[k] - 1);
  }
  for (std::size_t k = 0; k < j2.values.size(); ++k) {
    ok = ok && j2.values[k] <= 1 + 2 * j2.std_error[k];
    max2 = std::max(max2, j2.values[k] - 2 * j2.std_error[k] - 1);
  }
  return {ok, fmt("singles J up to r=%.2f, pairs J up to r=%.2f; J1 at r=1: %.3f, J2 at r=1: %.3f",
                  j1.grid.back(), j2.grid.back(), j1.values[10], j2.values[10])};
}

Outcome partition_oracle() {
  std::size_t mismatches = 0;
  for (std::size_t k = 0; k < 1000; ++k) {
    Rng rng(121, k);
    const auto n = 2 + static_cast<std::size_t>(rng.uniform() * 499);
    Configuration c;
    c.window = Window::square(50);
    for (std::size_t i = 0; i < n; ++i) c.atoms.push_back(sample_uniform_point(c.window, rng));
    enforce_generic_position(c, rng);
    const Partition fast = mnnr_partition(c);
    const Partition slow = partition_from_indicators(c.atoms);
    if (fast.pairs != slow.pairs || fast.singles != slow.singles ||
        fast.partner != slow.partner) {
      ++mismatches;
    }
  }
  return {mismatches == 0, fmt("%zu mismatches over 1000 configurations", mismatches)};
}

// A frequently quoted but incorrect tail of the sum of two exponentials.
double naive_nsc_ccdf(double mu1, double mu2, double t) {
  return mu2 / (mu1 - mu2) * (std::exp(-mu1 * t) - std::exp(-mu2 * t));
}

Outcome nsc_erratum() {
  const PathLoss pl = make_path_loss(1, 4);
  const SignalModel nsc = SignalModel::nsc();
  const std::vector<double> ts = {0.1, 0.5, 1, 2, 4};
  double worst = 0;
  double naive_err = 0;
  int case_id = 0;
  for (const auto& [m1, m2] : {std::pair{1.0, 2.0}, std::pair{1.0, 16.0},
                               std::pair{1.0, 1.0 + 1e-12}}) {
    const double r = std::pow(m1, 0.25), z = std::pow(m2, 0.25);
    const std::size_t n = 1000000;
    std::vector<std::size_t> hits(ts.size());
    Rng rng(131, static_cast<std::uint64_t>(case_id));
    for (std::size_t k = 0; k < n; ++k) {
      const double x = sample_exponential(m1, rng) + sample_exponential(m2, rng);
      for (std::size_t i = 0; i < ts.size(); ++i) hits[i] += x > ts[i];
    }
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double emp = static_cast<double>(hits[i]) / static_cast<double>(n);
      worst = std::max(worst, std::abs(pair_ccdf(nsc, pl, r, z, ts[i]) - emp));
      if (case_id == 0) naive_err = std::max(naive_err, std::abs(naive_nsc_ccdf(m1, m2, ts[i]) - emp));
    }
    ++case_id;
  }
  const bool ok = worst <= 0.001 && naive_err > 0.01;
  return {ok, fmt("corrected max err %.5f (limit 0.001); naive form err at (1,2) %.3f", worst,
                  naive_err)};
}

}  // namespace

int main() {
  std::printf("coopgeo acceptance (%u workers)\n", kWorkers);
  run("delta-constant", delta_constant);
  run("lambda-invariance", lambda_invariance);
  run("voronoi-shares", voronoi_shares);
  run("pair-distance-law", pair_distance_law);
  run("rice-joint-density", rice_joint_density);
  run("expected-interference", expected_interference);
  run("lt-closed-form", lt_closed_form);
  run("laplace-window-series", laplace_window);
  run("coverage-validation", coverage_validation);
  run("superposition-closeness", superposition_closeness);
  run("cooperation-gains", cooperation_gains);
  run("j-function-signs", j_function_signs);
  run("partition-oracle", partition_oracle);
  run("nsc-erratum", nsc_erratum);
  std::printf("%d criteria failed\n", g_failed);
  return g_failed == 0 ? 0 : 1;
}
