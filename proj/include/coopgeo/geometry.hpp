// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <numbers>
#include <span>

namespace coopgeo {

struct Point2 {
  double x = 0;
  double y = 0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point2 a, Point2 b) = default;

  double norm() const { return std::hypot(x, y); }
  double norm2() const { return x * x + y * y; }
};

struct Disc {
  Point2 center;
  double radius = 0;
};

//! Fraction of a disc covered by an equal disc centered on its boundary.
inline constexpr double kLensGamma =
    2.0 / 3.0 - 0.86602540378443864676 / std::numbers::pi;

//! Probability that a typical Poisson atom is mutually nearest to its NN.
inline constexpr double kPairedFraction = 1.0 / (2.0 - kLensGamma);

double distance(Point2 a, Point2 b);

//! Returns the lens constant; identical to kLensGamma.
double lens_gamma();

//! Area of B(x, d) union B(y, d) with d = |x - y|. Throws on x == y.
double pair_region_area(Point2 x, Point2 y);

//! Area of the intersection of two discs (closed form).
double disc_intersection_area(const Disc& a, const Disc& b);

//! Area of the intersection of any number of discs (boundary-arc integral).
double disc_intersection_area(std::span<const Disc> discs);

//! Area of the union of any number of discs (boundary-arc integral).
double disc_union_area(std::span<const Disc> discs);

//! |B(x,rho) u B(y,rho) \ B(0,r)| with x = r e^{i theta}, y = s e^{i phi},
//! rho = |x - y|. Requires r, s > 0 and x != y.
double three_disc_residual_area(double r, double s, double theta, double phi);

//! Same quantity by adaptive angular quadrature over B(0,r); used as a
//! cross-check. Relative accuracy is about rel_tol.
double three_disc_residual_area_quadrature(double r, double s, double theta,
                                           double phi, double rel_tol = 1e-9);

//! Axis-aligned rectangle or disc observation window.
class Window {
 public:
  Window() = default;

  static Window rectangle(double xmin, double xmax, double ymin, double ymax);
  //! Square of the given side centered at the origin.
  static Window square(double side);
  static Window disc(Point2 center, double radius);

  bool is_disc() const { return is_disc_; }
  double area() const;
  bool contains(Point2 p) const;
  //! Distance from p to the window boundary; negative outside.
  double boundary_distance(Point2 p) const;
  //! Window eroded by margin (may have zero area).
  Window shrunk(double margin) const;

  double xmin() const { return xmin_; }
  double xmax() const { return xmax_; }
  double ymin() const { return ymin_; }
  double ymax() const { return ymax_; }
  Point2 center() const { return center_; }
  double radius() const { return radius_; }

 private:
  bool is_disc_ = false;
  double xmin_ = 0, xmax_ = 0, ymin_ = 0, ymax_ = 0;
  Point2 center_;
  double radius_ = 0;
};

}  // namespace coopgeo
