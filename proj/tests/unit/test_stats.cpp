// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "coopgeo/error.hpp"
#include "coopgeo/stats.hpp"

using namespace coopgeo;

TEST_SUITE("stats") {
  TEST_CASE("accumulator") {
    MeanAccumulator a, b, all;
    for (int i = 1; i <= 10; ++i) (i <= 4 ? a : b).add(i), all.add(i);
    a.merge(b);
    CHECK(a.count() == 10);
    CHECK(a.mean() == doctest::Approx(5.5));
    CHECK(a.variance() == doctest::Approx(all.variance()));
    CHECK(all.variance() == doctest::Approx(55.0 / 6));
    CHECK(all.stderr_of_mean() == doctest::Approx(std::sqrt(55.0 / 60)));
  }

  TEST_CASE("nearest-pair distance law") {
    CHECK(analytic_nn_pairs(0.7406108449720955, 0.25) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(analytic_nn_pairs(0, 0.25) == 0);
  }

  TEST_CASE("empirical cdf and averaging") {
    const std::vector<double> xs{0.5, 1.5, 1.5, 3};
    const auto grid = linear_grid(0, 3, 4);
    const EmpiricalCdf c = empirical_cdf(xs, grid);
    CHECK(c.values == std::vector<double>{0, 0.25, 0.75, 1});
    const EmpiricalCdf d = empirical_cdf(std::vector<double>{2.5}, grid);
    const EmpiricalCdf both[] = {c, d};
    const EmpiricalCdf avg = average_cdfs(both);
    CHECK(avg.values[2] == doctest::Approx(0.375));
    CHECK(avg.std_error[2] == doctest::Approx(0.375));
  }

  TEST_CASE("j function truncation") {
    EmpiricalCdf g{{0, 1, 2}, {0, 0.5, 0.9}, {}}, f{{0, 1, 2}, {0, 0.2, 0.97}, {}};
    const JCurve j = j_function(g, f, 0.05);
    REQUIRE(j.grid.size() == 2);
    CHECK(j.values[1] == doctest::Approx(0.5 / 0.8));
    CHECK(j.cutoff == 2);
  }

  TEST_CASE("ks utilities") {
    std::vector<double> u;
    for (int i = 0; i < 100; ++i) u.push_back((i + 0.5) / 100);
    CHECK(ks_statistic(u, [](double x) { return x; }) == doctest::Approx(0.005));
    CHECK(ks_critical(10000, 0.05) == doctest::Approx(1.3581 / 100).epsilon(1e-3));
    const std::vector<long> counts{0, 1, 1, 2, 2, 2, 3, 3, 4, 5, 1, 2, 2, 3, 1, 0, 2, 4, 2, 3};
    const ChiSquare chi = poisson_chi_square(counts, 2.15);
    CHECK(chi.p_value > 0.01);
  }

  TEST_CASE("fraction needs interior atoms") {
    Configuration c{{{0.5, 0}, {1.5, 0}, {3, 0}}, Window::square(10)};
    const Partition p = mnnr_partition(c);
    CHECK(fraction_paired(p, interior_mask(c, 1)) == doctest::Approx(2.0 / 3));
    CHECK_THROWS_AS(fraction_paired(p, interior_mask(c, 4.99)), ValidationError);
  }
}
