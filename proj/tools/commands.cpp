// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "coopgeo/coverage.hpp"
#include "coopgeo/error.hpp"
#include "coopgeo/interference.hpp"
#include "coopgeo/io.hpp"
#include "coopgeo/mnnr.hpp"
#include "coopgeo/parallel.hpp"
#include "coopgeo/pointproc.hpp"
#include "coopgeo/stats.hpp"
#include "coopgeo/superposition.hpp"

namespace coopgeo::cli {
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

fs::path RunContext::data(const std::string& name) {
  outputs.push_back("data/" + name);
  return dir / "data" / name;
}

namespace {

constexpr const char* kOutputRootEnv = "COOPGEO_OUTPUT_ROOT";

// Options shared by every subcommand.
struct Common {
  std::optional<std::uint64_t> seed;
  unsigned workers = default_workers();
  std::string out;
};

std::map<std::string, Common> g_common;

CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& help,
                      bool needs_seed) {
  CLI::App* sub = app.add_subcommand(name, help);
  Common& c = g_common[name];
  auto* seed = sub->add_option("--seed", c.seed, "Master seed of the counter-based RNG");
  if (needs_seed) seed->required();
  sub->add_option("--workers", c.workers, "Worker threads; results do not depend on it")
      ->check(CLI::PositiveNumber);
  sub->add_option("--out", c.out,
                  std::string("Run directory (default $") + kOutputRootEnv + "/<command>)");
  return sub;
}

void require_positive(double v, const char* what) {
  if (!(v > 0) || !std::isfinite(v)) {
    throw ValidationError(std::string(what) + " must be positive");
  }
}

void require_reps(std::size_t reps) {
  if (reps < 1) throw ValidationError("--reps must be at least 1");
}

double margin_or_default(double margin, double lambda) {
  if (margin < 0) return default_margin(lambda);
  return margin;
}

std::uint64_t seed_of(const Common& c) {
  if (!c.seed) throw ValidationError("--seed is required for Monte Carlo runs");
  return *c.seed;
}

json estimate_json(const Estimate& e) {
  return {{"estimate", e.estimate}, {"stderr", e.std_error}, {"n_reps", e.n_reps}, {"seed", e.seed}};
}

void write_json(const fs::path& path, const json& j) {
  fs::create_directories(path.parent_path());
  std::ofstream(path) << j.dump(2) << '\n';
}

// --- fractions --------------------------------------------------------------

struct FractionsOpts {
  double lambda = 0.25;
  double side = 100;
  double margin = -1;
  std::size_t reps = 50;
};

Handler fractions(CLI::App* sub) {
  auto o = std::make_shared<FractionsOpts>();
  sub->add_option("--lambda", o->lambda, "Intensity (km^-2)");
  sub->add_option("--side", o->side, "Side of the square window (km)");
  sub->add_option("--margin", o->margin, "Interior margin (km); negative means 3/sqrt(lambda)");
  sub->add_option("--reps", o->reps, "Replications");
  return [o](RunContext& ctx) {
    require_positive(o->lambda, "--lambda");
    require_positive(o->side, "--side");
    require_reps(o->reps);
    const std::uint64_t seed = seed_of(g_common[ctx.command]);
    const double margin = margin_or_default(o->margin, o->lambda);
    const Window w = Window::square(o->side);
    if (!(w.shrunk(margin).area() > 0)) throw ValidationError("margin leaves no interior");
    const auto vals = replicate<double>(o->reps, ctx.workers, [&](std::size_t k) {
      Rng rng(seed, k);
      const Configuration c = sample_ppp(o->lambda, w, rng);
      return fraction_paired(mnnr_partition(c), interior_mask(c, margin));
    });
    MeanAccumulator acc;
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < vals.size(); ++k) {
      acc.add(vals[k]);
      rows.push_back({static_cast<double>(k), vals[k]});
    }
    const Estimate e = make_estimate(acc, seed);
    io::write_scalar(ctx.data("fraction.json"), e);
    io::write_table(ctx.data("fraction_reps.csv"), {"rep", "paired_fraction"}, rows);
    const IntensityEstimate ie =
        intensity_check(o->lambda, w, margin, o->reps, seed, ctx.workers);
    write_json(ctx.data("intensities.json"),
               {{"singles", estimate_json(ie.singles)},
                {"pairs", estimate_json(ie.pairs)},
                {"ratio", ie.ratio}});
    return json{{"paired_fraction", estimate_json(e)},
                {"singles_intensity", ie.singles.estimate},
                {"paired_intensity", ie.pairs.estimate}};
  };
}

// --- hexgrid-sweep ----------------------------------------------------------

struct HexOpts {
  double lambda = 0.25;
  double q_min = -1;
  double q_max = -1;
  std::size_t q_steps = 21;
  double side = 100;
  double margin = -1;
  std::size_t reps = 20;
};

Handler hexgrid(CLI::App* sub) {
  auto o = std::make_shared<HexOpts>();
  sub->add_option("--lambda", o->lambda, "Intensity (km^-2); sets the lattice spacing");
  sub->add_option("--q-min", o->q_min, "Smallest Q (km); negative means spacing/100 (Q = 0 is a tied lattice)");
  sub->add_option("--q-max", o->q_max, "Largest Q (km); negative means twice the spacing");
  sub->add_option("--q-steps", o->q_steps, "Number of Q values");
  sub->add_option("--side", o->side, "Side of the square window (km)");
  sub->add_option("--margin", o->margin, "Interior margin (km); negative means 3/sqrt(lambda)");
  sub->add_option("--reps", o->reps, "Replications per Q");
  return [o](RunContext& ctx) {
    require_positive(o->lambda, "--lambda");
    require_reps(o->reps);
    const std::uint64_t seed = seed_of(g_common[ctx.command]);
    const double spacing = hex_spacing_for_intensity(o->lambda);
    const double q_min = o->q_min < 0 ? spacing / 100 : o->q_min;
    const double q_max = o->q_max < 0 ? 2 * spacing : o->q_max;
    if (q_max < q_min || o->q_steps < 1) {
      throw ValidationError("need --q-min <= --q-max and --q-steps >= 1");
    }
    const double margin = margin_or_default(o->margin, o->lambda);
    const Window w = Window::square(o->side);
    const std::vector<double> qs =
        o->q_steps == 1 ? std::vector<double>{q_min} : linear_grid(q_min, q_max, o->q_steps);
    std::vector<std::vector<double>> rows;
    json curve = json::array();
    for (std::size_t qi = 0; qi < qs.size(); ++qi) {
      const double q = qs[qi];
      const auto vals = replicate<double>(o->reps, ctx.workers, [&](std::size_t k) {
        Rng rng(seed, (static_cast<std::uint64_t>(qi) << 32) | k);
        const Configuration c = sample_hex_grid(spacing, q, w, rng);
        return fraction_paired(mnnr_partition(c), interior_mask(c, margin));
      });
      MeanAccumulator acc;
      for (double v : vals) acc.add(v);
      rows.push_back({q, q / spacing, acc.mean(), acc.stderr_of_mean(), 1 - acc.mean()});
      curve.push_back({{"Q_km", q}, {"paired_fraction", acc.mean()}});
    }
    io::write_table(ctx.data("hexgrid.csv"),
                    {"Q_km", "Q_over_spacing", "paired_fraction", "stderr", "single_fraction"},
                    rows);
    return json{{"spacing_km", spacing}, {"curve", curve}};
  };
}

// --- voronoi ----------------------------------------------------------------

struct VoronoiOpts {
  double lambda = 0.25;
  double side = 100;
  double margin = -1;
  std::size_t reps = 40;
  std::size_t probes = 20000;
  double tolerance = 1e-6;
  bool skip_integral = false;
};

Handler voronoi(CLI::App* sub) {
  auto o = std::make_shared<VoronoiOpts>();
  sub->add_option("--lambda", o->lambda, "Intensity (km^-2)");
  sub->add_option("--side", o->side, "Side of the square window (km)");
  sub->add_option("--margin", o->margin, "Probe margin (km); negative means 3/sqrt(lambda)");
  sub->add_option("--reps", o->reps, "Replications");
  sub->add_option("--probes", o->probes, "Uniform probes per replication");
  sub->add_option("--tolerance", o->tolerance, "Absolute tolerance of the 4-D integral");
  sub->add_flag("--skip-integral", o->skip_integral, "Only run the probe estimate");
  return [o](RunContext& ctx) {
    require_positive(o->lambda, "--lambda");
    require_reps(o->reps);
    if (o->probes < 1) throw ValidationError("--probes must be at least 1");
    const std::uint64_t seed = seed_of(g_common[ctx.command]);
    const double margin = margin_or_default(o->margin, o->lambda);
    const Window w = Window::square(o->side);
    const auto vals = replicate<double>(o->reps, ctx.workers, [&](std::size_t k) {
      Rng rng(seed, k);
      const Configuration c = sample_ppp(o->lambda, w, rng);
      return voronoi_share_pairs(c, mnnr_partition(c), o->probes, rng, margin).pairs;
    });
    MeanAccumulator acc;
    for (double v : vals) acc.add(v);
    const Estimate e = make_estimate(acc, seed);
    json out{{"pairs_share", estimate_json(e)}, {"singles_share", 1 - e.estimate}};
    if (!o->skip_integral) {
      const QuadResult q = voronoi_pair_integral(o->lambda, o->tolerance);
      out["integral"] = {{"value", q.value}, {"error", q.error}};
    }
    write_json(ctx.data("voronoi.json"), out);
    return out;
  };
}

// --- nn-cdf -----------------------------------------------------------------

struct NnOpts {
  double lambda = 0.25;
  double side = 100;
  double margin = -1;
  std::size_t reps = 20;
  double r_max = -1;
  std::size_t points = 61;
};

Handler nn_cdf(CLI::App* sub) {
  auto o = std::make_shared<NnOpts>();
  sub->add_option("--lambda", o->lambda, "Intensity (km^-2)");
  sub->add_option("--side", o->side, "Side of the square window (km)");
  sub->add_option("--margin", o->margin, "Interior margin (km); negative means 3/sqrt(lambda)");
  sub->add_option("--reps", o->reps, "Replications");
  sub->add_option("--r-max", o->r_max, "Largest distance (km); negative means 2/sqrt(lambda)");
  sub->add_option("--points", o->points, "Grid points");
  return [o](RunContext& ctx) {
    require_positive(o->lambda, "--lambda");
    require_reps(o->reps);
    if (o->points < 2) throw ValidationError("--points must be at least 2");
    const std::uint64_t seed = seed_of(g_common[ctx.command]);
    const double margin = margin_or_default(o->margin, o->lambda);
    const double r_max = o->r_max > 0 ? o->r_max : 2 / std::sqrt(o->lambda);
    const std::vector<double> grid = linear_grid(0, r_max, o->points);
    const Window w = Window::square(o->side);
    const auto reps = replicate<std::vector<double>>(o->reps, ctx.workers, [&](std::size_t k) {
      Rng rng(seed, k);
      const Configuration c = sample_ppp(o->lambda, w, rng);
      return pair_distances(c, mnnr_partition(c), interior_mask(c, margin));
    });
    std::vector<EmpiricalCdf> cdfs;
    std::vector<double> all;
    for (const auto& d : reps) {
      cdfs.push_back(empirical_cdf(d, grid));
      all.insert(all.end(), d.begin(), d.end());
    }
    const EmpiricalCdf avg = average_cdfs(cdfs);
    std::vector<double> analytic;
    for (double r : grid) analytic.push_back(analytic_nn_pairs(r, o->lambda));
    io::write_curve(ctx.data("nn_cdf_empirical.csv"), avg.grid, avg.values, avg.std_error);
    io::write_curve(ctx.data("nn_cdf_analytic.csv"), grid, analytic, {});
    const double ks = ks_statistic(all, [&](double r) { return analytic_nn_pairs(r, o->lambda); });
    json out{{"n_pairs", all.size()}, {"ks", ks}, {"ks_critical_0.05", ks_critical(all.size(), 0.05)}};
    write_json(ctx.data("nn_cdf.json"), out);
    return out;
  };
}

// --- jfunction --------------------------------------------------------------

struct JOpts {
  double lambda = 0.25;
  double side = 100;
  double margin = -1;
  std::size_t reps = 40;
  std::size_t probes = 5000;
  double r_max = -1;
  std::size_t points = 41;
  double floor = 0.05;
};

Handler jfunction(CLI::App* sub) {
  auto o = std::make_shared<JOpts>();
  sub->add_option("--lambda", o->lambda, "Intensity (km^-2)");
  sub->add_option("--side", o->side, "Side of the square window (km)");
  sub->add_option("--margin", o->margin, "Interior margin (km); negative means 3/sqrt(lambda)");
  sub->add_option("--reps", o->reps, "Replications");
  sub->add_option("--probes", o->probes, "Empty-space probes per replication");
  sub->add_option("--r-max", o->r_max, "Largest distance (km); negative means 2/sqrt(lambda)");
  sub->add_option("--points", o->points, "Grid points");
  sub->add_option("--floor", o->floor, "Drop radii where 1 - F falls below this");
  return [o](RunContext& ctx) {
    require_positive(o->lambda, "--lambda");
    require_reps(o->reps);
    if (o->points < 2 || o->probes < 1) throw ValidationError("need --points >= 2 and --probes >= 1");
    const std::uint64_t seed = seed_of(g_common[ctx.command]);
    const double margin = margin_or_default(o->margin, o->lambda);
    const double r_max = o->r_max > 0 ? o->r_max : 2 / std::sqrt(o->lambda);
    const std::vector<double> grid = linear_grid(0, r_max, o->points);
    const Window w = Window::square(o->side);
    struct Rep {
      EmpiricalCdf g[2], f[2];
    };
    const auto reps = replicate<Rep>(o->reps, ctx.workers, [&](std::size_t k) {
      Rng rng(seed, k);
      const Configuration c = sample_ppp(o->lambda, w, rng);
      const Partition p = mnnr_partition(c);
      const InteriorMask mask = interior_mask(c, margin);
      Rep r;
      for (int i = 0; i < 2; ++i) {
        const Role role = i == 0 ? Role::single : Role::paired;
        r.g[i] = empirical_cdf(same_role_nn_distances(c, p, role, mask), grid);
        r.f[i] = empirical_es(c, p, role, grid, o->probes, rng, margin);
      }
      return r;
    });
    json out;
    for (int i = 0; i < 2; ++i) {
      const std::string tag = i == 0 ? "singles" : "pairs";
      std::vector<EmpiricalCdf> g, f;
      for (const Rep& r : reps) {
        g.push_back(r.g[i]);
        f.push_back(r.f[i]);
      }
      const EmpiricalCdf ga = average_cdfs(g), fa = average_cdfs(f);
      const JCurve j = j_function(ga, fa, o->floor);
      io::write_curve(ctx.data("g_" + tag + ".csv"), ga.grid, ga.values, ga.std_error);
      io::write_curve(ctx.data("f_" + tag + ".csv"), fa.grid, fa.values, fa.std_error);
      io::write_curve(ctx.data("j_" + tag + ".csv"), j.grid, j.values, j.std_error);
      out[tag] = {{"cutoff_km", j.cutoff}, {"points", j.grid.size()}};
    }
    return out;
  };
}

// --- interference-mean -------------------------------------------------------

struct InterfOpts {
  double lambda = 0.25;
  double beta = 4;
  double p = 1;
  std::vector<double> radii = {1, 1.5, 2, 2.5, 3};
  std::vector<std::string> models = {"nsc", "max"};
  std::size_t reps = 2000;
  double window_radius = 60;
};

Handler interference_mean(CLI::App* sub) {
  auto o = std::make_shared<InterfOpts>();
  sub->add_option("--lambda", o->lambda, "Intensity (km^-2)");
  sub->add_option("--beta", o->beta, "Path-loss exponent (> 2)");
  sub->add_option("--p", o->p, "Transmit power (W)");
  sub->add_option("--radii", o->radii, "Guard radii R (km)")->delimiter(',');
  sub->add_option("--models", o->models, "Pair signal models")->delimiter(',');
  sub->add_option("--reps", o->reps, "Replications");
  sub->add_option("--window-radius", o->window_radius, "Simulation disc radius (km)");
  return [o](RunContext& ctx) {
    require_positive(o->lambda, "--lambda");
    require_reps(o->reps);
    const PathLoss pl = make_path_loss(o->p, o->beta);
    const std::uint64_t seed = seed_of(g_common[ctx.command]);
    std::vector<SignalModel> models;
    for (const auto& m : o->models) models.push_back(parse_model(m));
    for (double r : o->radii) {
      if (!(r > 0) || r >= o->window_radius) throw ValidationError("radii must lie in (0, window radius)");
    }
    const Window w = Window::disc({0, 0}, o->window_radius);
    const std::size_t nr = o->radii.size(), nm = models.size();
    // Per replication: singles per radius, then pairs per (model, radius).
    const auto samples = replicate<std::vector<double>>(o->reps, ctx.workers, [&](std::size_t k) {
      Rng rng(seed, k);
      const Configuration c = sample_ppp(o->lambda, w, rng);
      const Partition part = mnnr_partition(c);
      std::vector<double> out(nr + nm * nr);
      for (std::size_t m = 0; m < nm; ++m) {
        for (std::size_t i = 0; i < nr; ++i) {
          Rng fade = rng.split(i);  // same fading for every model
          const InterferenceSample s = mc_interference(c, part, models[m], pl, o->radii[i], fade);
          out[i] = s.singles;
          out[nr + m * nr + i] = s.pairs;
        }
      }
      return out;
    });
    json out;
    for (std::size_t m = 0; m < nm; ++m) {
      std::vector<io::InterferenceRow> mc_rows, an_rows;
      for (std::size_t i = 0; i < nr; ++i) {
        MeanAccumulator a1, a2;
        for (const auto& s : samples) {
          a1.add(s[i]);
          a2.add(s[nr + m * nr + i]);
        }
        mc_rows.push_back({o->radii[i], a1.mean(), a2.mean(), a1.stderr_of_mean(), a2.stderr_of_mean()});
        const QuadResult e2 = expected_interference_pairs(o->lambda, models[m], pl, o->radii[i]);
        an_rows.push_back({o->radii[i], expected_interference_singles(o->lambda, pl, o->radii[i]),
                           e2.value, 0, 0});
      }
      const std::string tag = models[m].token();
      io::write_interference(ctx.data("interference_" + tag + ".csv"), mc_rows);
      io::write_interference(ctx.data("interference_" + tag + "_analytic.csv"), an_rows);
      double worst = 0;
      for (std::size_t i = 0; i < nr; ++i) {
        worst = std::max({worst, std::abs(mc_rows[i].mean_i1 / an_rows[i].mean_i1 - 1),
                          std::abs(mc_rows[i].mean_i2 / an_rows[i].mean_i2 - 1)});
      }
      out[tag] = {{"max_relative_error", worst}};
    }
    return out;
  };
}

// --- laplace-window ---------------------------------------------------------

struct LaplaceOpts {
  double lambda = 0.25;
  double side = -1;
  int n_max = 15;
  std::size_t mc_per_term = 20000;
  std::size_t reps = 100000;
  double f_scale = 0.1;
  double tolerance = 1e-3;
};

Handler laplace_window(CLI::App* sub) {
  auto o = std::make_shared<LaplaceOpts>();
  sub->add_option("--lambda", o->lambda, "Intensity (km^-2)");
  sub->add_option("--side", o->side, "Side of the square window (km); negative gives E[N] = 3");
  sub->add_option("--n-max", o->n_max, "Largest atom count kept in the series");
  sub->add_option("--mc-per-term", o->mc_per_term, "Monte Carlo draws per series term");
  sub->add_option("--reps", o->reps, "Replications of the direct estimate");
  sub->add_option("--f-scale", o->f_scale, "f(x) = scale * |x|^2 (km^-2)");
  sub->add_option("--tolerance", o->tolerance, "Largest allowed Poisson tail beyond n-max");
  return [o](RunContext& ctx) {
    require_positive(o->lambda, "--lambda");
    require_reps(o->reps);
    const std::uint64_t seed = seed_of(g_common[ctx.command]);
    const double side = o->side > 0 ? o->side : std::sqrt(3 / o->lambda);
    const Window w = Window::square(side);
    const double scale = o->f_scale;
    const SiteFunction f = [scale](Point2 x) { return scale * x.norm2(); };
    json out{{"side_km", side}, {"expected_atoms", o->lambda * w.area()}};
    for (Role role : {Role::single, Role::paired}) {
      const std::string tag = role == Role::single ? "singles" : "pairs";
      const std::uint64_t stream = role == Role::single ? 1 : 2;
      Rng rng(seed, stream << 40);
      const LaplaceSeries s =
          laplace_window_series(o->lambda, w, f, role, o->n_max, o->mc_per_term, rng, o->tolerance);
      const Estimate d = direct_window_laplace(o->lambda, w, f, role, o->reps,
                                               seed + stream, ctx.workers);
      std::vector<std::vector<double>> rows;
      for (const SeriesTerm& t : s.terms) {
        rows.push_back({static_cast<double>(t.n), t.weight, t.mean, t.std_error});
      }
      io::write_table(ctx.data("series_" + tag + ".csv"), {"n", "poisson_weight", "mean", "stderr"},
                      rows);
      out[tag] = {{"series", s.value},
                  {"series_stderr", s.std_error},
                  {"truncation_bound", s.truncation_bound},
                  {"direct", estimate_json(d)},
                  {"relative_gap", std::abs(s.value - d.estimate) / d.estimate}};
    }
    write_json(ctx.data("laplace_window.json"), out);
    return out;
  };
}

// --- lt-check ---------------------------------------------------------------

struct LtOpts {
  double lambda = 0.25;
  double beta = 4;
  double p = 1;
  std::string model = "nsc";
  std::vector<double> s = {0.1, 1, 10};
  double rho = 0;
  std::size_t reps = 10000;
  double window_radius = 40;
};

Handler lt_check(CLI::App* sub) {
  auto o = std::make_shared<LtOpts>();
  sub->add_option("--lambda", o->lambda, "Intensity (km^-2)");
  sub->add_option("--beta", o->beta, "Path-loss exponent (> 2)");
  sub->add_option("--p", o->p, "Transmit power (W)");
  sub->add_option("--model", o->model, "Pair signal model of the interferers");
  sub->add_option("--s", o->s, "Laplace arguments (W^-1)")->delimiter(',');
  sub->add_option("--rho", o->rho, "Exclusion radius (km)");
  sub->add_option("--reps", o->reps, "Monte Carlo replications");
  sub->add_option("--window-radius", o->window_radius, "Simulation disc radius (km)");
  return [o](RunContext& ctx) {
    require_positive(o->lambda, "--lambda");
    require_reps(o->reps);
    const std::uint64_t seed = seed_of(g_common[ctx.command]);
    const SuperParams sp = derive_params(o->lambda);
    const PathLoss pl = make_path_loss(o->p, o->beta);
    const SignalModel model = parse_model(o->model);
    const Window w = Window::disc({0, 0}, o->window_radius);
    const auto configs = replicate<MarkedConfiguration>(o->reps, ctx.workers, [&](std::size_t k) {
      Rng rng(seed, k);
      return sample_superposition(sp, w, rng);
    });
    std::vector<std::vector<double>> rows;
    json out = json::array();
    for (double s : o->s) {
      const double quad = lt_interference_singles(sp, pl, s, o->rho);
      const double closed = o->rho == 0 ? lt_singles_closed_form(sp, pl, s) : NAN;
      const double pairs = lt_interference_pairs(sp, model, pl, s, o->rho);
      MeanAccumulator acc;
      for (const MarkedConfiguration& m : configs) {
        double v = 1;
        for (const Point2& x : m.singles.atoms) {
          if (x.norm() > o->rho) v *= single_lt(pl, x.norm(), s);
        }
        for (std::size_t j = 0; j < m.parents.size(); ++j) {
          const double r = m.parents.atoms[j].norm(), z = m.daughters[j].norm();
          if (r > o->rho && z > o->rho) v *= pair_lt(model, pl, r, z, s);
        }
        acc.add(v);
      }
      const double rel = std::abs(quad - closed) / closed;
      rows.push_back({s, o->rho, quad, closed, rel, pairs, quad * pairs, acc.mean(),
                      acc.stderr_of_mean()});
      out.push_back({{"s", s},
                     {"closed_form_rel_err", rel},
                     {"analytic", quad * pairs},
                     {"mc", acc.mean()},
                     {"mc_stderr", acc.stderr_of_mean()}});
    }
    io::write_table(ctx.data("lt_check.csv"),
                    {"s", "rho_km", "singles_quadrature", "singles_closed_form", "rel_err",
                     "pairs_analytic", "product_analytic", "mc", "mc_stderr"},
                    rows);
    return json{{"rows", out}};
  };
}

// --- coverage ---------------------------------------------------------------

struct CoverageOpts {
  std::string model = "mnnr";
  std::string method = "auto";
  std::string scheme = "nsc";
  std::string association = "closest";
  double lambda = 0.25;
  double beta = 4;
  double p = 1;
  double sigma2 = 0;
  double r0 = 1;
  double t_min_db = -10;
  double t_max_db = 20;
  double t_step_db = 1;
  std::size_t reps = 10000;
  double window_radius = 0;
  bool indicator = false;
  bool no_far_field = false;
};

Handler coverage(CLI::App* sub) {
  auto o = std::make_shared<CoverageOpts>();
  sub->add_option("--model", o->model, "Point model")
      ->check(CLI::IsMember({"mnnr", "superposition", "baseline"}));
  sub->add_option("--method", o->method, "auto picks mc for mnnr, analytic otherwise")
      ->check(CLI::IsMember({"auto", "analytic", "mc"}));
  sub->add_option("--scheme", o->scheme, "none | maxoff | nsc | off[:q=Q] | max | ph:coherent | ph:uniform");
  sub->add_option("--association", o->association, "closest | fixed");
  sub->add_option("--lambda", o->lambda, "Intensity (km^-2)");
  sub->add_option("--beta", o->beta, "Path-loss exponent (> 2)");
  sub->add_option("--p", o->p, "Transmit power (W)");
  sub->add_option("--sigma2", o->sigma2, "Noise power (W)");
  sub->add_option("--r0", o->r0, "Serving distance for fixed association (km)");
  sub->add_option("--t-min-db", o->t_min_db, "Smallest threshold (dB)");
  sub->add_option("--t-max-db", o->t_max_db, "Largest threshold (dB)");
  sub->add_option("--t-step-db", o->t_step_db, "Threshold step (dB)");
  sub->add_option("--reps", o->reps, "Monte Carlo replications");
  sub->add_option("--window-radius", o->window_radius,
                  "Simulation disc radius (km); 0 picks one from lambda");
  sub->add_flag("--indicator", o->indicator, "Average coverage indicators instead of fading expectations");
  sub->add_flag("--no-far-field", o->no_far_field, "Drop the analytic correction beyond the window");
  return [o](RunContext& ctx) {
    require_positive(o->lambda, "--lambda");
    const PathLoss pl = make_path_loss(o->p, o->beta);
    pl.validate();
    const Association as = parse_association(o->association);
    const Scheme sc = parse_scheme(o->scheme);
    const std::vector<double> ts = db_grid(o->t_min_db, o->t_max_db, o->t_step_db);
    std::string method = o->method;
    if (method == "auto") method = o->model == "mnnr" ? "mc" : "analytic";
    McOptions mc;
    mc.reps = o->reps;
    mc.workers = ctx.workers;
    mc.window_radius = o->window_radius;
    mc.conditional = !o->indicator;
    mc.far_field = !o->no_far_field;
    CoverageCurve curve;
    if (o->model == "baseline" || (o->model == "superposition" && !sc.cooperative)) {
      if (method == "mc") throw ValidationError("the non-cooperative baseline is analytic only");
      curve = coverage_baseline_nocoop(o->lambda, pl, ts, as, o->r0);
    } else if (o->model == "mnnr") {
      if (method != "mc") throw UnsupportedError("the mnnr model is evaluated by simulation only");
      require_reps(o->reps);
      mc.seed = seed_of(g_common[ctx.command]);
      curve = mc_coverage_mnnr(o->lambda, sc, pl, as, o->r0, o->sigma2, ts, mc);
    } else {
      const SuperParams sp = derive_params(o->lambda);
      if (method == "mc") {
        require_reps(o->reps);
        mc.seed = seed_of(g_common[ctx.command]);
        curve = mc_coverage_superposition(sp, sc, pl, as, o->r0, o->sigma2, ts, mc);
      } else {
        curve = coverage_curve_analytic(sp, sc, pl, as, o->r0, o->sigma2, ts);
      }
    }
    curve.meta.sigma2 = o->sigma2;
    io::write_coverage(ctx.data("coverage.csv"), curve);
    const CoverageCurve base = coverage_baseline_nocoop(o->lambda, pl, ts, as, o->r0);
    io::write_coverage(ctx.data("baseline.csv"), base);
    json out{{"model", o->model}, {"method", method}, {"scheme", sc.token},
             {"association", to_string(as)}, {"peak_gain", peak_gain(curve, base)}};
    try {
      out["mid_range_gain"] = mean_gain(curve, base);
    } catch (const ValidationError&) {
      out["mid_range_gain"] = nullptr;
    }
    if (!curve.branch_fraction.empty()) out["branch_fraction"] = curve.branch_fraction;
    write_json(ctx.data("coverage_summary.json"), out);
    return out;
  };
}

// --- convergence ------------------------------------------------------------

struct ConvOpts {
  double lambda = 0.25;
  std::vector<double> radii = {2, 4, 8, 16, 32};
  std::size_t reps = 200;
};

Handler convergence(CLI::App* sub) {
  auto o = std::make_shared<ConvOpts>();
  sub->add_option("--lambda", o->lambda, "Intensity (km^-2)");
  sub->add_option("--radii", o->radii, "Increasing disc radii (km)")->delimiter(',');
  sub->add_option("--reps", o->reps, "Replications per radius");
  return [o](RunContext& ctx) {
    require_positive(o->lambda, "--lambda");
    require_reps(o->reps);
    const std::uint64_t seed = seed_of(g_common[ctx.command]);
    const auto rows = window_convergence_check(o->lambda, o->radii, o->reps, seed, ctx.workers);
    std::vector<std::vector<double>> table;
    json out = json::array();
    for (const ConvergenceRow& r : rows) {
      table.push_back({r.radius, r.expected_atoms, r.paired_fraction, r.std_error,
                       static_cast<double>(r.reps)});
      out.push_back({{"radius_km", r.radius}, {"paired_fraction", r.paired_fraction},
                     {"stderr", r.std_error}});
    }
    io::write_table(ctx.data("convergence.csv"),
                    {"radius_km", "expected_atoms", "paired_fraction", "stderr", "reps"}, table);
    return json{{"rows", out}};
  };
}

json config_echo(const CLI::App& sub) {
  json cfg;
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string name = opt->get_lnames().front();
    if (name == "help") continue;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      cfg[name] = res.size() == 1 ? json(res.front()) : json(res);
    } else {
      cfg[name] = opt->get_default_str();
    }
  }
  return cfg;
}

}  // namespace

std::map<std::string, Command> register_commands(CLI::App& app) {
  std::map<std::string, Command> cmds;
  auto add = [&](const std::string& name, const std::string& help, bool seed,
                 Handler (*make)(CLI::App*)) {
    CLI::App* sub = add_command(app, name, help, seed);
    cmds[name] = {sub, make(sub)};
  };
  add("fractions", "Paired fraction of a Poisson process and the two role intensities", true,
      fractions);
  add("hexgrid-sweep", "Paired fraction of a perturbed hexagonal lattice against Q", true, hexgrid);
  add("voronoi", "Voronoi area share of paired atoms: probes and 4-D integral", true, voronoi);
  add("nn-cdf", "Pair-distance CDF against its closed form", true, nn_cdf);
  add("jfunction", "J-functions of singles and pairs", true, jfunction);
  add("interference-mean", "Mean interference from singles and pairs outside a guard radius", true,
      interference_mean);
  add("laplace-window", "Window Laplace functional: truncated series against direct simulation",
      true, laplace_window);
  add("lt-check", "Interference Laplace transforms of the superposition model", true, lt_check);
  add("coverage", "Coverage probability curves", false, coverage);
  add("convergence", "Paired fraction against window radius", true, convergence);
  return cmds;
}

int execute(CLI::App& app, std::map<std::string, Command>& commands) {
  const auto subs = app.get_subcommands();
  if (subs.empty()) return 2;
  const std::string name = subs.front()->get_name();
  Command& cmd = commands.at(name);
  const Common& common = g_common[name];
  RunContext ctx;
  ctx.command = name;
  ctx.workers = common.workers;
  if (!common.out.empty()) {
    ctx.dir = common.out;
  } else {
    const char* root = std::getenv(kOutputRootEnv);
    ctx.dir = fs::path(root != nullptr && *root != '\0' ? root : "coopgeo-runs") / name;
  }
  const auto t0 = std::chrono::steady_clock::now();
  try {
    fs::create_directories(ctx.dir / "data");
    const json summary = cmd.run(ctx);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    json manifest{{"command", name},
                  {"version", COOPGEO_VERSION},
                  {"config", config_echo(*cmd.app)},
                  {"outputs", ctx.outputs},
                  {"summary", summary},
                  {"wall_time_s", secs}};
    std::ofstream(ctx.dir / "manifest.json") << manifest.dump(2) << '\n';
    std::cout << summary.dump(2) << '\n';
    return 0;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return 2;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace coopgeo::cli
