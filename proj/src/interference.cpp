// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#include "coopgeo/interference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/distributions/poisson.hpp>

#include "coopgeo/error.hpp"
#include "coopgeo/parallel.hpp"

namespace coopgeo {
namespace {

constexpr double kPi = std::numbers::pi;

void check_guard(double r) {
  if (!(r > 0) || !std::isfinite(r)) {
    throw ValidationError("guard radius must be positive and finite");
  }
}

}  // namespace

InterferenceSample mc_interference(const Configuration& config,
                                   const Partition& partition,
                                   const SignalModel& model,
                                   const PathLoss& pl, double guard_radius,
                                   Rng& rng) {
  pl.validate();
  if (!(guard_radius >= 0)) throw ValidationError("guard radius must be nonnegative");
  if (partition.size() != config.atoms.size()) {
    throw ValidationError("mc_interference: partition does not match configuration");
  }
  InterferenceSample out;
  for (std::size_t i : partition.singles) {
    const double r = config.atoms[i].norm();
    if (r > guard_radius) out.singles += single_signal(pl, r, rng);
  }
  for (const auto& [i, j] : partition.pairs) {
    const double r = config.atoms[i].norm();
    const double z = config.atoms[j].norm();
    if (r > guard_radius && z > guard_radius) {
      out.pairs += pair_signal(model, pl, r, z, rng);
    }
  }
  return out;
}

double expected_interference_singles(double lambda, const PathLoss& pl,
                                     double guard_radius) {
  pl.validate();
  check_guard(guard_radius);
  if (!(lambda > 0)) throw ValidationError("intensity must be positive");
  return (1 - kPairedFraction) * lambda * 2 * kPi * pl.p / (pl.beta - 2) *
         std::pow(guard_radius, 2 - pl.beta);
}

QuadResult expected_interference_pairs(double lambda, const SignalModel& model,
                                       const PathLoss& pl, double guard_radius,
                                       double rel_tol) {
  pl.validate();
  check_guard(guard_radius);
  if (!(lambda > 0)) throw ValidationError("intensity must be positive");
  const double R = guard_radius;
  const double decay = lambda * kPi * (2 - kLensGamma);
  const double t_max = std::sqrt(std::log(1e14) / decay);
  const double tol = std::max(rel_tol * 0.1, 1e-12);

  // x = (r, 0); partner at offset t e^{i psi}; z = |x + offset| > R.
  auto over_psi = [&](double r, double t) {
    const double c = (R * R - r * r - t * t) / (2 * r * t);
    if (c >= 1) return 0.0;
    const double psi_max = c <= -1 ? kPi : std::acos(c);
    auto g = [&](double psi) {
      const double z = std::sqrt(std::max(r * r + t * t + 2 * r * t * std::cos(psi), 0.0));
      if (z <= R) return 0.0;
      return mean_pair_signal(model, pl, r, z);
    };
    return 2 * integrate(g, 0.0, psi_max, tol, 10).value;
  };
  auto over_t = [&](double r) {
    auto h = [&](double t) {
      if (t <= 0) return 0.0;
      return t * std::exp(-decay * t * t) * over_psi(r, t);
    };
    // psi_max has square-root kinks at t = r - R and t = r + R.
    double cuts[] = {0.0, r - R, r + R, t_max};
    double acc = 0;
    for (int k = 0; k < 3; ++k) {
      const double a = std::max(cuts[k], 0.0), b = std::min(cuts[k + 1], t_max);
      if (b > a) acc += integrate(h, a, b, tol, 10).value;
    }
    return acc;
  };
  QuadResult out = integrate([&](double r) { return r * over_t(r); }, R,
                             std::numeric_limits<double>::infinity(), rel_tol, 12);
  const double scale = 0.5 * lambda * lambda * 2 * kPi;
  out.value *= scale;
  out.error *= scale;
  return out;
}

IntensityEstimate intensity_check(double lambda, const Window& window,
                                  double margin, std::size_t reps,
                                  std::uint64_t seed, unsigned workers) {
  const Window inner = window.shrunk(margin);
  if (!(inner.area() > 0)) throw ValidationError("intensity_check: empty interior");
  if (reps < 2) throw ValidationError("intensity_check: need at least two replications");
  struct Counts {
    double singles = 0, pairs = 0;
  };
  const auto counts = replicate<Counts>(reps, workers, [&](std::size_t k) {
    Rng rng(seed, k);
    const Configuration c = sample_ppp(lambda, window, rng);
    const Partition p = mnnr_partition(c);
    const InteriorMask m = interior_mask(c, margin);
    Counts out;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!m[i]) continue;
      (p.is_paired(i) ? out.pairs : out.singles) += 1;
    }
    out.singles /= inner.area();
    out.pairs /= inner.area();
    return out;
  });
  MeanAccumulator s, q;
  for (const Counts& c : counts) {
    s.add(c.singles);
    q.add(c.pairs);
  }
  IntensityEstimate out;
  out.singles = make_estimate(s, seed);
  out.pairs = make_estimate(q, seed);
  out.ratio = out.singles.estimate / out.pairs.estimate;
  return out;
}

namespace {

double exponent_for(std::span<const Point2> pts, const SiteFunction& f,
                    Role which, const std::vector<std::uint8_t>& pair_flag) {
  double e = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const bool paired = pair_flag[i] != 0;
    if (paired == (which == Role::paired)) e += f(pts[i]);
  }
  return e;
}

}  // namespace

LaplaceSeries laplace_window_series(double lambda, const Window& window,
                                    const SiteFunction& f, Role which,
                                    int n_max, std::size_t mc_per_term,
                                    Rng& rng, double tolerance) {
  if (!(lambda > 0)) throw ValidationError("laplace_window_series: lambda must be positive");
  if (n_max < 0 || mc_per_term < 2) {
    throw ValidationError("laplace_window_series: need n_max >= 0 and >= 2 draws per term");
  }
  const double mean = lambda * window.area();
  if (!(mean > 0)) throw ValidationError("laplace_window_series: window has zero area");
  const boost::math::poisson_distribution<double> pois(mean);
  LaplaceSeries out;
  out.truncation_bound =
      boost::math::cdf(boost::math::complement(pois, static_cast<double>(n_max)));
  if (out.truncation_bound > tolerance) {
    throw NumericalError("laplace_window_series: Poisson tail beyond n_max exceeds tolerance",
                         out.truncation_bound);
  }
  double var = 0;
  std::vector<Point2> pts;
  for (int n = 0; n <= n_max; ++n) {
    SeriesTerm term;
    term.n = n;
    term.weight = boost::math::pdf(pois, static_cast<double>(n));
    if (n == 0) {
      term.mean = 1;
    } else {
      Rng local = rng.split(static_cast<std::uint64_t>(n));
      MeanAccumulator acc;
      pts.resize(static_cast<std::size_t>(n));
      for (std::size_t k = 0; k < mc_per_term; ++k) {
        for (Point2& p : pts) p = sample_uniform_point(window, local);
        const Indicators ind = indicator_vectors(pts);
        acc.add(std::exp(-exponent_for(pts, f, which, ind.pair)));
      }
      term.mean = acc.mean();
      term.std_error = acc.stderr_of_mean();
    }
    out.value += term.weight * term.mean;
    var += term.weight * term.weight * term.std_error * term.std_error;
    out.terms.push_back(term);
  }
  out.std_error = std::sqrt(var);
  return out;
}

Estimate direct_window_laplace(double lambda, const Window& window,
                               const SiteFunction& f, Role which,
                               std::size_t reps, std::uint64_t seed,
                               unsigned workers) {
  if (reps < 2) throw ValidationError("direct_window_laplace: need at least two replications");
  const auto vals = replicate<double>(reps, workers, [&](std::size_t k) {
    Rng rng(seed, k);
    const Configuration c = sample_ppp(lambda, window, rng);
    const Partition p = mnnr_partition(c);
    std::vector<std::uint8_t> flag(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) flag[i] = p.is_paired(i);
    return std::exp(-exponent_for(c.atoms, f, which, flag));
  });
  MeanAccumulator acc;
  for (double v : vals) acc.add(v);
  return make_estimate(acc, seed);
}

std::vector<ConvergenceRow> window_convergence_check(
    double lambda, const std::vector<double>& radii, std::size_t reps,
    std::uint64_t seed, unsigned workers) {
  if (!(lambda > 0)) throw ValidationError("window_convergence_check: lambda must be positive");
  if (reps < 2) throw ValidationError("window_convergence_check: need at least two replications");
  std::vector<ConvergenceRow> rows;
  for (std::size_t ri = 0; ri < radii.size(); ++ri) {
    const double radius = radii[ri];
    if (!(radius > 0)) throw ValidationError("window_convergence_check: radii must be positive");
    const Window w = Window::disc({0, 0}, radius);
    struct Tally {
      double paired = 0, total = 0;
    };
    const auto tallies = replicate<Tally>(reps, workers, [&](std::size_t k) {
      Rng rng(seed, (static_cast<std::uint64_t>(ri) << 40) | k);
      const Configuration c = sample_ppp(lambda, w, rng);
      const Partition p = mnnr_partition(c);
      return Tally{2.0 * static_cast<double>(p.pairs.size()),
                   static_cast<double>(c.size())};
    });
    double sp = 0, sn = 0;
    for (const Tally& t : tallies) {
      sp += t.paired;
      sn += t.total;
    }
    ConvergenceRow row;
    row.radius = radius;
    row.expected_atoms = lambda * w.area();
    row.reps = reps;
    if (sn > 0) {
      // Ratio estimator with linearized standard error.
      const double ratio = sp / sn;
      const double m = static_cast<double>(reps);
      double ss = 0;
      for (const Tally& t : tallies) {
        const double e = t.paired - ratio * t.total;
        ss += e * e;
      }
      row.paired_fraction = ratio;
      row.std_error = std::sqrt(ss / (m * (m - 1))) / (sn / m);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace coopgeo
