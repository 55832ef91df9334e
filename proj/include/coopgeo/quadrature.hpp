// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace coopgeo {

struct QuadResult {
  double value = 0;
  double error = 0;  //!< absolute error estimate
};

//! Adaptive 21-point Gauss-Kronrod on [a, b]; b may be +infinity.
template <class F>
QuadResult integrate(F&& f, double a, double b, double rel_tol = 1e-10,
                     unsigned max_depth = 15) {
  QuadResult out;
  if (!(b > a)) return out;
  double l1 = 0;
  out.value = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(
      f, a, b, max_depth, rel_tol, &out.error, &l1);
  return out;
}

//! Double-exponential rule on [a, infinity); suited to slow algebraic decay.
template <class F>
QuadResult integrate_tail(F&& f, double a, double rel_tol = 1e-10) {
  QuadResult out;
  double l1 = 0;
  boost::math::quadrature::exp_sinh<double> rule;
  out.value = rule.integrate([&](double t) { return f(a + t); }, rel_tol,
                             &out.error, &l1);
  return out;
}

}  // namespace coopgeo
