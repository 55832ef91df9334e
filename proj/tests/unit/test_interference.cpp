// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "coopgeo/error.hpp"
#include "coopgeo/interference.hpp"
#include "coopgeo/mnnr.hpp"

using namespace coopgeo;

TEST_SUITE("interference") {
  const PathLoss pl = make_path_loss(1, 4);

  TEST_CASE("singles mean closed form") {
    CHECK(expected_interference_singles(0.25, pl, 1) == doctest::Approx(0.29726935883953905).epsilon(1e-12));
    // Scales as R^{2 - beta}.
    CHECK(expected_interference_singles(0.25, pl, 2) ==
          doctest::Approx(0.29726935883953905 / 4).epsilon(1e-12));
    CHECK_THROWS(expected_interference_singles(0.25, pl, 0));
  }

  TEST_CASE("pairs mean orders by model") {
    const double nsc = expected_interference_pairs(0.25, SignalModel::nsc(), pl, 1.5).value;
    const double max = expected_interference_pairs(0.25, SignalModel::max(), pl, 1.5).value;
    const double off = expected_interference_pairs(0.25, SignalModel::off(0.5), pl, 1.5).value;
    CHECK(max < nsc);
    CHECK(off < max);
    CHECK(off == doctest::Approx(nsc / 2).epsilon(1e-6));
  }

  TEST_CASE("guard radius excludes stations") {
    Configuration c{{{0.5, 0}, {0.6, 0}, {3, 0}, {3.1, 0}, {-5, 0}}, Window::square(20)};
    const Partition p = mnnr_partition(c);
    Rng rng(1);
    const InterferenceSample big = mc_interference(c, p, SignalModel::nsc(), pl, 10, rng);
    CHECK(big.singles == 0);
    CHECK(big.pairs == 0);
    Rng rng2(1);
    const InterferenceSample mid = mc_interference(c, p, SignalModel::nsc(), pl, 1, rng2);
    CHECK(mid.singles > 0);
    CHECK(mid.pairs > 0);
  }

  TEST_CASE("window series truncation") {
    const Window w = Window::square(std::sqrt(3 / 0.25));
    Rng rng(2);
    const SiteFunction f = [](Point2 x) { return 0.1 * x.norm2(); };
    CHECK_THROWS_AS(laplace_window_series(0.25, w, f, Role::single, 2, 100, rng), NumericalError);
    const LaplaceSeries s = laplace_window_series(0.25, w, f, Role::single, 15, 2000, rng);
    CHECK(s.truncation_bound < 1e-3);
    CHECK(s.terms.size() == 16);
    CHECK(s.terms[0].mean == doctest::Approx(1));
    CHECK((s.value > 0 && s.value <= 1));
  }
}
