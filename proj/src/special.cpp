// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#include "coopgeo/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "coopgeo/quadrature.hpp"

namespace coopgeo {

double bessel_i0_scaled(double x) {
  x = std::abs(x);
  if (x <= 700) return std::exp(-x) * std::cyl_bessel_i(0.0, x);
  // Asymptotic expansion; terms (2k-1)!!^2 / (k! 8^k x^k).
  double term = 1, sum = 1;
  for (int k = 1; k < 8; ++k) {
    term *= (2.0 * k - 1) * (2.0 * k - 1) / (8.0 * k * x);
    sum += term;
  }
  return sum / std::sqrt(2 * std::numbers::pi * x);
}

double rice_pdf(double z, double nu, double sigma) {
  if (z <= 0) return 0;
  const double s2 = sigma * sigma;
  const double d = z - nu;
  return z / s2 * std::exp(-d * d / (2 * s2)) * bessel_i0_scaled(z * nu / s2);
}

double rice_upper(double nu, double sigma, double tail) {
  // |(nu,0) + sigma N| <= nu + sigma |N| and |N| is Rayleigh(1).
  return nu + sigma * std::sqrt(-2 * std::log(tail));
}

double rice_cdf(double z, double nu, double sigma) {
  if (z <= 0) return 0;
  const double lo = std::max(0.0, nu - sigma * std::sqrt(-2 * std::log(1e-17)));
  const double hi = rice_upper(nu, sigma, 1e-17);
  if (z <= lo) return 0;
  if (z >= hi) return 1;
  auto f = [&](double t) { return rice_pdf(t, nu, sigma); };
  // Integrate the shorter side for accuracy near either end.
  const double left = integrate(f, lo, z, 1e-12).value;
  if (left < 0.5) return left;
  return 1 - integrate(f, z, hi, 1e-12).value;
}

double rayleigh_pdf(double r, double sigma) {
  if (r <= 0) return 0;
  const double s2 = sigma * sigma;
  return r / s2 * std::exp(-r * r / (2 * s2));
}

double rayleigh_cdf(double r, double sigma) {
  if (r <= 0) return 0;
  return -std::expm1(-r * r / (2 * sigma * sigma));
}

}  // namespace coopgeo
