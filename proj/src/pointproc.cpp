// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#include "coopgeo/pointproc.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "coopgeo/error.hpp"
#include "coopgeo/kdtree.hpp"

namespace coopgeo {
namespace {

constexpr double kTieRelTol = 1e-12;

void require_positive(double v, const char* what) {
  if (!(v > 0) || !std::isfinite(v)) {
    throw ValidationError(std::string(what) + " must be positive and finite");
  }
}

}  // namespace

double sample_normal(Rng& rng) {
  // Marsaglia polar method, one variate per accepted pair.
  for (;;) {
    const double u = 2 * rng.uniform() - 1;
    const double v = 2 * rng.uniform() - 1;
    const double s = u * u + v * v;
    if (s > 0 && s < 1) return u * std::sqrt(-2 * std::log(s) / s);
  }
}

double sample_exponential(double rate, Rng& rng) {
  require_positive(rate, "exponential rate");
  return -std::log(rng.uniform()) / rate;
}

double sample_rayleigh(double sigma, Rng& rng) {
  require_positive(sigma, "Rayleigh scale");
  return sigma * std::sqrt(-2 * std::log(rng.uniform()));
}

double sample_rice(double nu, double sigma, Rng& rng) {
  require_positive(sigma, "Rice scale");
  if (!(nu >= 0)) throw ValidationError("Rice offset must be nonnegative");
  const double a = nu + sigma * sample_normal(rng);
  const double b = sigma * sample_normal(rng);
  return std::hypot(a, b);
}

bool sample_bernoulli(double q, Rng& rng) {
  if (!(q > 0 && q < 1)) throw ValidationError("Bernoulli q must be in (0, 1)");
  return rng.uniform() < q;
}

double sample_uniform_angle(Rng& rng) {
  return 2 * std::numbers::pi * rng.uniform();
}

std::uint64_t sample_poisson(double mean, Rng& rng) {
  if (!(mean >= 0) || !std::isfinite(mean)) {
    throw ValidationError("Poisson mean must be finite and nonnegative");
  }
  if (mean == 0) return 0;
  std::poisson_distribution<std::uint64_t> dist(mean);
  return dist(rng);
}

Point2 sample_uniform_point(const Window& w, Rng& rng) {
  if (w.is_disc()) {
    const double r = w.radius() * std::sqrt(rng.uniform());
    const double t = sample_uniform_angle(rng);
    return {w.center().x + r * std::cos(t), w.center().y + r * std::sin(t)};
  }
  return {w.xmin() + (w.xmax() - w.xmin()) * rng.uniform(),
          w.ymin() + (w.ymax() - w.ymin()) * rng.uniform()};
}

Configuration sample_ppp_raw(double lambda, const Window& window, Rng& rng) {
  require_positive(lambda, "intensity");
  Configuration c;
  c.window = window;
  const std::uint64_t n = sample_poisson(lambda * window.area(), rng);
  c.atoms.reserve(n);
  for (std::uint64_t k = 0; k < n; ++k) {
    c.atoms.push_back(sample_uniform_point(window, rng));
  }
  return c;
}

Configuration sample_ppp(double lambda, const Window& window, Rng& rng) {
  Configuration c = sample_ppp_raw(lambda, window, rng);
  enforce_generic_position(c, rng);
  return c;
}

std::size_t enforce_generic_position(Configuration& c, Rng& rng) {
  std::size_t moved = 0;
  for (int round = 0; round < 64; ++round) {
    if (c.atoms.size() < 3) return moved;
    const KdTree tree(c.atoms);
    std::size_t tied = 0;
    for (std::size_t i = 0; i < c.atoms.size(); ++i) {
      const KdTree::Neighbor nb = tree.nearest(c.atoms[i], i);
      if (nb.second_dist2 - nb.dist2 <= kTieRelTol * nb.dist2) {
        c.atoms[i] = sample_uniform_point(c.window, rng);
        ++tied;
      }
    }
    if (tied == 0) return moved;
    moved += tied;
  }
  throw NumericalError("enforce_generic_position: ties persist",
                       static_cast<double>(moved));
}

double hex_spacing_for_intensity(double lambda) {
  require_positive(lambda, "intensity");
  return std::sqrt(2 / (std::sqrt(3.0) * lambda));
}

Configuration sample_hex_grid(double spacing, double perturbation,
                              const Window& window, Rng& rng) {
  require_positive(spacing, "hex spacing");
  if (!(perturbation >= 0)) {
    throw ValidationError("hex perturbation must be nonnegative");
  }
  Configuration c;
  c.window = window;
  const Window inner = window.shrunk(perturbation);
  const double dy = spacing * std::sqrt(3.0) / 2;
  const auto j0 = static_cast<long>(std::floor(inner.ymin() / dy));
  const auto j1 = static_cast<long>(std::ceil(inner.ymax() / dy));
  for (long j = j0; j <= j1; ++j) {
    const double offset = (j % 2 != 0) ? 0.5 * spacing : 0.0;
    const auto i0 = static_cast<long>(std::floor((inner.xmin() - offset) / spacing));
    const auto i1 = static_cast<long>(std::ceil((inner.xmax() - offset) / spacing));
    for (long i = i0; i <= i1; ++i) {
      const Point2 center{i * spacing + offset, j * dy};
      if (!inner.contains(center)) continue;
      const double r = perturbation * rng.uniform();
      const double t = sample_uniform_angle(rng);
      c.atoms.push_back({center.x + r * std::cos(t), center.y + r * std::sin(t)});
    }
  }
  return c;
}

}  // namespace coopgeo
