// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#include "coopgeo/geometry.hpp"

#include <algorithm>
#include <vector>

#include "coopgeo/error.hpp"
#include "coopgeo/quadrature.hpp"

namespace coopgeo {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * std::numbers::pi;

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0 ? t + kTwoPi : t;
}

bool same_disc(const Disc& a, const Disc& b) {
  return a.center == b.center && a.radius == b.radius;
}

// Contribution of the ccw arc [t0, t1] of circle (c, R) to the area integral
// 1/2 * closed-integral (x dy - y dx).
double arc_term(const Disc& d, double t0, double t1) {
  const double r = d.radius;
  return 0.5 * (r * r * (t1 - t0) +
                d.center.x * r * (std::sin(t1) - std::sin(t0)) -
                d.center.y * r * (std::cos(t1) - std::cos(t0)));
}

// Sums arc_term over the pieces of each circle whose midpoint satisfies
// keep(i, point). Duplicate discs are collapsed to their first occurrence.
template <class Keep>
double boundary_integral(std::span<const Disc> discs, Keep keep) {
  double total = 0;
  std::vector<double> cuts;
  for (std::size_t i = 0; i < discs.size(); ++i) {
    const Disc& di = discs[i];
    if (di.radius <= 0) continue;
    bool duplicate = false;
    for (std::size_t j = 0; j < i; ++j) duplicate |= same_disc(di, discs[j]);
    if (duplicate) continue;

    cuts.assign({0.0, kTwoPi});
    for (std::size_t j = 0; j < discs.size(); ++j) {
      if (j == i) continue;
      const Disc& dj = discs[j];
      const Point2 v = dj.center - di.center;
      const double d = v.norm();
      if (d == 0 || d >= di.radius + dj.radius ||
          d <= std::abs(di.radius - dj.radius)) {
        continue;
      }
      double c = (di.radius * di.radius + d * d - dj.radius * dj.radius) /
                 (2 * di.radius * d);
      const double w = std::acos(std::clamp(c, -1.0, 1.0));
      const double phi = std::atan2(v.y, v.x);
      cuts.push_back(wrap_angle(phi - w));
      cuts.push_back(wrap_angle(phi + w));
    }
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double t0 = cuts[k], t1 = cuts[k + 1];
      if (t1 - t0 <= 0) continue;
      const double tm = 0.5 * (t0 + t1);
      const Point2 mid{di.center.x + di.radius * std::cos(tm),
                       di.center.y + di.radius * std::sin(tm)};
      if (keep(i, mid)) total += arc_term(di, t0, t1);
    }
  }
  return total;
}

bool inside(const Disc& d, Point2 p) {
  return (p - d.center).norm2() < d.radius * d.radius;
}

}  // namespace

double distance(Point2 a, Point2 b) { return (a - b).norm(); }

double lens_gamma() { return kLensGamma; }

double pair_region_area(Point2 x, Point2 y) {
  if (x == y) throw ValidationError("pair_region_area: coincident atoms");
  return kPi * (x - y).norm2() * (2 - kLensGamma);
}

double disc_intersection_area(const Disc& a, const Disc& b) {
  const double d = distance(a.center, b.center);
  const double r1 = a.radius, r2 = b.radius;
  if (r1 <= 0 || r2 <= 0 || d >= r1 + r2) return 0;
  if (d <= std::abs(r1 - r2)) {
    const double m = std::min(r1, r2);
    return kPi * m * m;
  }
  const double c1 = std::clamp((d * d + r1 * r1 - r2 * r2) / (2 * d * r1), -1.0, 1.0);
  const double c2 = std::clamp((d * d + r2 * r2 - r1 * r1) / (2 * d * r2), -1.0, 1.0);
  const double k = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2);
  return r1 * r1 * std::acos(c1) + r2 * r2 * std::acos(c2) -
         0.5 * std::sqrt(std::max(k, 0.0));
}

double disc_intersection_area(std::span<const Disc> discs) {
  if (discs.empty()) return 0;
  for (const Disc& d : discs) {
    if (d.radius <= 0) return 0;
  }
  const double a = boundary_integral(discs, [&](std::size_t i, Point2 p) {
    for (std::size_t j = 0; j < discs.size(); ++j) {
      if (j != i && !same_disc(discs[i], discs[j]) && !inside(discs[j], p)) {
        return false;
      }
    }
    return true;
  });
  return std::max(a, 0.0);
}

double disc_union_area(std::span<const Disc> discs) {
  const double a = boundary_integral(discs, [&](std::size_t i, Point2 p) {
    for (std::size_t j = 0; j < discs.size(); ++j) {
      if (j != i && !same_disc(discs[i], discs[j]) && inside(discs[j], p)) {
        return false;
      }
    }
    return true;
  });
  return std::max(a, 0.0);
}

namespace {

struct ResidualSetup {
  Point2 x, y;
  double rho;
};

ResidualSetup residual_setup(double r, double s, double theta, double phi) {
  if (!(r > 0) || !(s > 0)) {
    throw ValidationError("three_disc_residual_area: radii must be positive");
  }
  ResidualSetup out;
  out.x = {r * std::cos(theta), r * std::sin(theta)};
  out.y = {s * std::cos(phi), s * std::sin(phi)};
  out.rho = distance(out.x, out.y);
  if (!(out.rho > 0)) {
    throw ValidationError("three_disc_residual_area: coincident atoms");
  }
  return out;
}

}  // namespace

double three_disc_residual_area(double r, double s, double theta, double phi) {
  const ResidualSetup g = residual_setup(r, s, theta, phi);
  const double pair_area = kPi * g.rho * g.rho * (2 - kLensGamma);
  if (g.rho >= 2 * r) return pair_area - kPi * r * r;

  const Disc b0{{0, 0}, r};
  const Disc bx{g.x, g.rho};
  const Disc by{g.y, g.rho};
  const Disc triple[] = {bx, by, b0};
  const double covered = disc_intersection_area(bx, b0) +
                         disc_intersection_area(by, b0) -
                         disc_intersection_area(triple);
  return std::max(pair_area - covered, 0.0);
}

double three_disc_residual_area_quadrature(double r, double s, double theta,
                                           double phi, double rel_tol) {
  const ResidualSetup g = residual_setup(r, s, theta, phi);
  const double rho2 = g.rho * g.rho;

  // Radial chord of B(c, rho) along direction e, clipped to [0, r].
  auto chord = [&](Point2 c, Point2 e, double& lo, double& hi) {
    const double b = e.x * c.x + e.y * c.y;
    const double disc = b * b - c.norm2() + rho2;
    if (disc <= 0) return false;
    const double q = std::sqrt(disc);
    lo = std::max(b - q, 0.0);
    hi = std::min(b + q, r);
    return hi > lo;
  };
  // Integral of u du over the covered part of the ray at angle t.
  auto covered_on_ray = [&](double t) {
    const Point2 e{std::cos(t), std::sin(t)};
    double a0 = 0, a1 = 0, b0 = 0, b1 = 0;
    const bool ha = chord(g.x, e, a0, a1);
    const bool hb = chord(g.y, e, b0, b1);
    auto sq = [](double lo, double hi) { return 0.5 * (hi * hi - lo * lo); };
    if (!ha && !hb) return 0.0;
    if (!ha) return sq(b0, b1);
    if (!hb) return sq(a0, a1);
    if (a1 < b0 || b1 < a0) return sq(a0, a1) + sq(b0, b1);
    return sq(std::min(a0, b0), std::max(a1, b1));
  };
  // The ray integrand has kinks at circle-circle crossings and at rays
  // tangent to either disc; integrate piecewise between them.
  std::vector<double> cuts{0.0, kTwoPi};
  const Disc discs[] = {{{0, 0}, r}, {g.x, g.rho}, {g.y, g.rho}};
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      const Point2 v = discs[b].center - discs[a].center;
      const double d = v.norm();
      const double ra = discs[a].radius, rb = discs[b].radius;
      if (d == 0 || d >= ra + rb || d <= std::abs(ra - rb)) continue;
      const double w = std::acos(std::clamp(
          (ra * ra + d * d - rb * rb) / (2 * ra * d), -1.0, 1.0));
      const double phi = std::atan2(v.y, v.x);
      for (double t : {phi - w, phi + w}) {
        const Point2 p{discs[a].center.x + ra * std::cos(t),
                       discs[a].center.y + ra * std::sin(t)};
        cuts.push_back(wrap_angle(std::atan2(p.y, p.x)));
      }
    }
  }
  for (const Point2 c : {g.x, g.y}) {
    const double d = c.norm();
    if (d <= g.rho) continue;
    const double w = std::asin(g.rho / d);
    const double phi = std::atan2(c.y, c.x);
    cuts.push_back(wrap_angle(phi - w));
    cuts.push_back(wrap_angle(phi + w));
  }
  std::sort(cuts.begin(), cuts.end());
  double covered = 0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double t0 = cuts[k], w = cuts[k + 1] - t0;
    if (w <= 0) continue;
    // Smoothstep map flattens the square-root endpoint behavior at tangents.
    auto mapped = [&](double u) {
      return 6 * u * (1 - u) * w * covered_on_ray(t0 + w * u * u * (3 - 2 * u));
    };
    covered += integrate(mapped, 0.0, 1.0, rel_tol, 12).value;
  }
  return std::max(kPi * rho2 * (2 - kLensGamma) - covered, 0.0);
}

Window Window::rectangle(double xmin, double xmax, double ymin, double ymax) {
  if (!(xmax >= xmin) || !(ymax >= ymin) || !std::isfinite(xmin) ||
      !std::isfinite(xmax) || !std::isfinite(ymin) || !std::isfinite(ymax)) {
    throw ValidationError("Window: invalid rectangle bounds");
  }
  Window w;
  w.xmin_ = xmin;
  w.xmax_ = xmax;
  w.ymin_ = ymin;
  w.ymax_ = ymax;
  w.center_ = {0.5 * (xmin + xmax), 0.5 * (ymin + ymax)};
  return w;
}

Window Window::square(double side) {
  return rectangle(-0.5 * side, 0.5 * side, -0.5 * side, 0.5 * side);
}

Window Window::disc(Point2 center, double radius) {
  if (!(radius >= 0) || !std::isfinite(radius)) {
    throw ValidationError("Window: invalid disc radius");
  }
  Window w;
  w.is_disc_ = true;
  w.center_ = center;
  w.radius_ = radius;
  w.xmin_ = center.x - radius;
  w.xmax_ = center.x + radius;
  w.ymin_ = center.y - radius;
  w.ymax_ = center.y + radius;
  return w;
}

double Window::area() const {
  if (is_disc_) return kPi * radius_ * radius_;
  return (xmax_ - xmin_) * (ymax_ - ymin_);
}

bool Window::contains(Point2 p) const {
  if (is_disc_) return (p - center_).norm2() <= radius_ * radius_;
  return p.x >= xmin_ && p.x <= xmax_ && p.y >= ymin_ && p.y <= ymax_;
}

double Window::boundary_distance(Point2 p) const {
  if (is_disc_) return radius_ - distance(p, center_);
  return std::min(std::min(p.x - xmin_, xmax_ - p.x),
                  std::min(p.y - ymin_, ymax_ - p.y));
}

Window Window::shrunk(double margin) const {
  if (is_disc_) return disc(center_, std::max(radius_ - margin, 0.0));
  const double hx = std::max(0.5 * (xmax_ - xmin_) - margin, 0.0);
  const double hy = std::max(0.5 * (ymax_ - ymin_) - margin, 0.0);
  return rectangle(center_.x - hx, center_.x + hx, center_.y - hy,
                   center_.y + hy);
}

}  // namespace coopgeo
