// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "coopgeo/coverage.hpp"
#include "coopgeo/error.hpp"

using namespace coopgeo;

TEST_SUITE("coverage") {
  const SuperParams sp = derive_params(0.25);
  const PathLoss pl = make_path_loss(1, 4);

  TEST_CASE("tokens and thresholds") {
    CHECK(db_to_linear(10) == doctest::Approx(10));
    CHECK(linear_to_db(0.1) == doctest::Approx(-10));
    CHECK(db_grid().size() == 31);
    CHECK_FALSE(parse_scheme("none").cooperative);
    const Scheme mo = parse_scheme("maxoff");
    CHECK(mo.serving.kind == ModelKind::max);
    CHECK(mo.interfering.kind == ModelKind::off);
    CHECK(mo.interfering.q == doctest::Approx(0.5));
    CHECK_THROWS_AS(parse_scheme("single"), ValidationError);
    CHECK(parse_association("fixed") == Association::fixed);
    CHECK_THROWS_AS(parse_association("nearest"), ValidationError);
  }

  TEST_CASE("baseline") {
    CHECK(baseline_nocoop(0.25, pl, Association::closest, 1, 1) ==
          doctest::Approx(1 / (1 + std::numbers::pi / 4)).epsilon(1e-10));
    CHECK(baseline_nocoop(0.25, pl, Association::closest, 1, 1) ==
          doctest::Approx(0.5600991535115574).epsilon(1e-10));
    CHECK(baseline_nocoop(0.25, pl, Association::fixed, 1, 1) ==
          doctest::Approx(std::exp(-0.25 * std::numbers::pi * std::numbers::pi / 2)).epsilon(1e-10));
  }

  TEST_CASE("fixed association") {
    const double c0 = coverage_fixed_analytic(sp, SignalModel::nsc(), pl, 1, 0, 1);
    CHECK((c0 > 0 && c0 < 1));
    CHECK(coverage_fixed_analytic(sp, SignalModel::nsc(), pl, 1, 0.5, 1) == doctest::Approx(c0 * std::exp(-0.5)).epsilon(1e-12));
    CHECK(coverage_fixed_analytic(sp, SignalModel::off(0.5), pl, 1, 0, 1) > c0);
  }

  TEST_CASE("closest association oracles") {
    const ClosestCoverage nsc(sp, parse_scheme("nsc"), pl, 0);
    const ClosestTerms t = nsc(1);
    CHECK(t.g == doctest::Approx(0.25340).epsilon(5e-5));
    CHECK(t.h == doctest::Approx(0.18411).epsilon(5e-5));
    CHECK(t.k == doctest::Approx(0.15182).epsilon(5e-5));
    CHECK(t.total == doctest::Approx(0.58933).epsilon(2e-5));
    CHECK(nsc(0.1).total == doctest::Approx(0.93297).epsilon(2e-5));
    CHECK(nsc(10).total == doctest::Approx(0.21717).epsilon(5e-5));
    CHECK(t.residual < 1e-4);
    CHECK(coverage_closest_analytic(sp, parse_scheme("max"), pl, 0, 1) == doctest::Approx(0.58986).epsilon(2e-5));
    CHECK(coverage_closest_analytic(sp, parse_scheme("maxoff"), pl, 0, 1) == doctest::Approx(0.63768).epsilon(2e-5));
    CHECK(coverage_closest_analytic(sp, parse_scheme("off"), pl, 0, 1) == doctest::Approx(0.53773).epsilon(2e-5));
  }

  TEST_CASE("closest association rejects unsupported schemes") {
    CHECK_THROWS_AS(ClosestCoverage(sp, parse_scheme("none"), pl, 0), ValidationError);
    CHECK_THROWS_AS(ClosestCoverage(sp, parse_scheme("ph:coherent"), pl, 0), UnsupportedError);
  }

  TEST_CASE("simulation is reproducible and independent of workers") {
    McOptions o;
    o.reps = 200;
    o.seed = 17;
    const std::vector<double> ts{0.5, 2};
    const auto a = mc_coverage_mnnr(0.25, parse_scheme("nsc"), pl, Association::closest, 1, 0, ts, o);
    o.workers = 3;
    const auto b = mc_coverage_mnnr(0.25, parse_scheme("nsc"), pl, Association::closest, 1, 0, ts, o);
    CHECK(a.values == b.values);
    CHECK_THROWS_AS(mc_coverage_superposition(sp, parse_scheme("none"), pl, Association::closest, 1, 0, ts, o),
                    ValidationError);
  }

  TEST_CASE("gains") {
    CoverageCurve a, b;
    a.thresholds = b.thresholds = {1, 2, 3};
    a.values = {0.9, 0.6, 0.3};
    b.values = {0.8, 0.4, 0.1};
    CHECK(peak_gain(a, b) == doctest::Approx(0.2));
    CHECK(mean_gain(a, b) == doctest::Approx(0.2));
    b.values = {0.9, 0.95, 0.99};
    CHECK_THROWS_AS(mean_gain(a, b), ValidationError);
  }
}
