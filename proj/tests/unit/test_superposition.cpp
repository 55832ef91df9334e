// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "coopgeo/geometry.hpp"
#include "coopgeo/quadrature.hpp"
#include "coopgeo/superposition.hpp"

using namespace coopgeo;
using std::numbers::pi;

TEST_SUITE("superposition") {
  const SuperParams sp = derive_params(0.25);
  const PathLoss pl = make_path_loss(1, 4);

  TEST_CASE("derived scales") {
    const double g = lens_gamma(), d = 1 / (2 - g);
    CHECK(sp.delta == doctest::Approx(d).epsilon(1e-14));
    CHECK(sp.alpha == doctest::Approx(1 / std::sqrt(2 * 0.25 * pi * (2 - g))).epsilon(1e-14));
    CHECK(sp.xi == doctest::Approx(1 / std::sqrt((1 - d) * 2 * 0.25 * pi)).epsilon(1e-14));
    CHECK(sp.zeta == doctest::Approx(1 / std::sqrt(d * 0.25 * pi)).epsilon(1e-14));
    CHECK(sp.daughter_scale() == doctest::Approx(std::hypot(sp.alpha, sp.zeta)).epsilon(1e-14));
    CHECK(sp.singles_intensity() + 2 * sp.parents_intensity() == doctest::Approx(0.25));
  }

  TEST_CASE("joint density is a density") {
    CHECK(joint_cdf_r2_z2(sp, 60, 60) == doctest::Approx(1).epsilon(1e-6));
    // Marginal of Z2 at large r is Rayleigh with the daughter scale.
    const double z = 1.7;
    const double marg = integrate([&](double r) { return joint_density_r2_z2(sp, r, z); }, 0, 40).value;
    CHECK(marg == doctest::Approx(z / (sp.daughter_scale() * sp.daughter_scale()) *
                                  std::exp(-z * z / (2 * sp.daughter_scale() * sp.daughter_scale())))
                      .epsilon(1e-6));
    CHECK(nearest_cluster_clear(sp, 0) == doctest::Approx(1));
  }

  TEST_CASE("singles transform closed form") {
    CHECK(lt_singles_closed_form(sp, pl, 1) == doctest::Approx(0.6269116753491243).epsilon(1e-12));
    for (double s : {0.01, 1.0, 50.0}) {
      CHECK(lt_interference_singles(sp, pl, s, 0) ==
            doctest::Approx(lt_singles_closed_form(sp, pl, s)).epsilon(1e-6));
    }
    const SinglesExponent fast(sp, pl);
    for (double rho : {0.0, 0.4, 2.0}) {
      CHECK(fast(0.8, rho) == doctest::Approx(singles_exponent(sp, pl, 0.8, rho)).epsilon(1e-8));
    }
  }

  TEST_CASE("pairs exponent oracles") {
    const SignalModel nsc = SignalModel::nsc();
    // Reference values from an independent nested-quadrature evaluation.
    CHECK(pairs_exponent(sp, nsc, pl, 1, 0) == doctest::Approx(0.6214024649674).epsilon(1e-6));
    CHECK(pairs_exponent(sp, nsc, pl, 4.55174e-06, 0) == doctest::Approx(0.00163246).epsilon(1e-4));
    CHECK(pairs_exponent(sp, nsc, pl, 1.38879e-11, 0) == doctest::Approx(2.8574e-06).epsilon(1e-4));
    CHECK(pairs_exponent(sp, nsc, pl, 4.55174e-06, 0.05) == doctest::Approx(7.32779e-04).epsilon(1e-4));
    CHECK(pairs_exponent(sp, nsc, pl, 1.38879e-11, 0.05) == doctest::Approx(2.70325e-09).epsilon(1e-4));
  }

  TEST_CASE("pairs table matches direct evaluation") {
    const SignalModel max = SignalModel::max();
    const PairsExponentTable table(sp, max, pl, 8);
    for (double s : {1e-9, 1e-3, 0.3, 7.0, 1e4}) {
      for (double rho : {0.0, 0.02, 0.5, 1.7, 4.0}) {
        INFO("s=" << s << " rho=" << rho);
        CHECK(table(s, rho) == doctest::Approx(pairs_exponent(sp, max, pl, s, rho)).epsilon(2e-4));
      }
    }
  }

  TEST_CASE("far field vanishes with the radius") {
    const SignalModel nsc = SignalModel::nsc();
    const FarFieldTable near(sp, nsc, pl, 5), far(sp, nsc, pl, 20);
    CHECK(far(1) < near(1));
    CHECK(near(1) == doctest::Approx(singles_exponent(sp, pl, 1, 5) +
                                     pairs_far_exponent(sp, nsc, pl, 1, 5))
                         .epsilon(1e-4));
  }

  TEST_CASE("sampling intensities") {
    Rng rng(3);
    const MarkedConfiguration m = sample_superposition(sp, Window::square(200), rng);
    CHECK(static_cast<double>(m.singles.size()) / 40000 == doctest::Approx(sp.singles_intensity()).epsilon(0.03));
    CHECK(m.daughters.size() == m.parents.size());
    CHECK(static_cast<double>(m.parents.size()) / 40000 == doctest::Approx(sp.parents_intensity()).epsilon(0.03));
  }
}
