// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace coopgeo {

//! exp(-x) * I0(x) for x >= 0, finite for all x.
double bessel_i0_scaled(double x);

//! Density of |(nu, 0) + sigma * N(0, I2)| at z.
double rice_pdf(double z, double nu, double sigma);

//! P(Z <= z) for the Rice law above, by quadrature.
double rice_cdf(double z, double nu, double sigma);

//! Upper point beyond which the Rice law has mass below tail.
double rice_upper(double nu, double sigma, double tail = 1e-10);

double rayleigh_pdf(double r, double sigma);
double rayleigh_cdf(double r, double sigma);

}  // namespace coopgeo
