// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "coopgeo/geometry.hpp"
#include "coopgeo/rng.hpp"

namespace coopgeo {

//! Finite set of atoms observed through a window (coordinates in km).
struct Configuration {
  std::vector<Point2> atoms;
  Window window;

  std::size_t size() const { return atoms.size(); }
};

double sample_normal(Rng& rng);
double sample_exponential(double rate, Rng& rng);
double sample_rayleigh(double sigma, Rng& rng);
//! |(nu, 0) + sigma * (N1, N2)|.
double sample_rice(double nu, double sigma, Rng& rng);
bool sample_bernoulli(double q, Rng& rng);
double sample_uniform_angle(Rng& rng);
std::uint64_t sample_poisson(double mean, Rng& rng);

Point2 sample_uniform_point(const Window& window, Rng& rng);

//! Homogeneous Poisson process in window; atoms in general position.
Configuration sample_ppp(double lambda, const Window& window, Rng& rng);

//! Same without the tie check; for callers that never partition.
Configuration sample_ppp_raw(double lambda, const Window& window, Rng& rng);

//! Resamples atoms whose nearest-neighbor distance is tied.
//! Returns the number of atoms moved.
std::size_t enforce_generic_position(Configuration& config, Rng& rng);

//! Hexagonal lattice with the given center spacing; each center in the
//! window eroded by Q gets one atom at uniform angle and U[0, Q] radius.
Configuration sample_hex_grid(double spacing, double perturbation,
                              const Window& window, Rng& rng);

//! Center spacing of a hexagonal lattice with intensity lambda.
double hex_spacing_for_intensity(double lambda);

}  // namespace coopgeo
