// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "coopgeo/error.hpp"
#include "coopgeo/mnnr.hpp"
#include "coopgeo/pointproc.hpp"

using namespace coopgeo;

namespace {
Configuration line(std::vector<Point2> pts) {
  return {std::move(pts), Window::square(100)};
}
}  // namespace

TEST_SUITE("mnnr") {
  TEST_CASE("small configurations") {
    const Configuration c = line({{0, 0}, {1, 0}, {3.5, 0}, {10, 0}, {10.2, 0}});
    CHECK(nearest_neighbor(c, 2) == 1);
    const Partition p = mnnr_partition(c);
    REQUIRE(p.pairs.size() == 2);
    CHECK(p.pairs[0] == std::pair<std::size_t, std::size_t>{0, 1});
    CHECK(p.pairs[1] == std::pair<std::size_t, std::size_t>{3, 4});
    CHECK(p.singles == std::vector<std::size_t>{2});
    CHECK(p.partner[4] == 3);
    CHECK_FALSE(p.is_paired(2));
  }

  TEST_CASE("chain pairs only the closest link") {
    const Configuration c = line({{0, 0}, {1, 0}, {2.1, 0}, {3.3, 0}});
    const Partition p = mnnr_partition(c);
    CHECK(p.pairs.size() == 1);
    CHECK(p.singles.size() == 2);
  }

  TEST_CASE("degenerate sizes") {
    CHECK(mnnr_partition(line({})).size() == 0);
    const Partition one = mnnr_partition(line({{1, 1}}));
    CHECK(one.singles.size() == 1);
    CHECK_THROWS_AS(nearest_neighbor(line({{1, 1}}), 0), ValidationError);
    const Partition two = mnnr_partition(line({{1, 1}, {2, 2}}));
    CHECK(two.pairs.size() == 1);
  }

  TEST_CASE("ties are rejected") {
    const Configuration sq = line({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    CHECK_THROWS_WITH_AS(mnnr_partition(sq), doctest::Contains("tie"), ValidationError);
    CHECK_THROWS_AS(nearest_neighbor(sq, 0), ValidationError);
    Rng rng(1);
    const Configuration hex = sample_hex_grid(2, 0, Window::square(20), rng);
    CHECK_THROWS_AS(mnnr_partition(hex), ValidationError);
  }

  TEST_CASE("kd-tree partition matches the direct search") {
    for (std::uint64_t k = 0; k < 50; ++k) {
      Rng rng(9, k);
      const Configuration c = sample_ppp(0.5, Window::square(15), rng);
      const Partition a = mnnr_partition(c);
      const Partition b = partition_from_indicators(c.atoms);
      CHECK(a.pairs == b.pairs);
      CHECK(a.singles == b.singles);
      const Indicators ind = indicator_vectors(c.atoms);
      for (std::size_t i = 0; i < c.size(); ++i) CHECK(ind.pair[i] + ind.single[i] == 1);
    }
  }

  TEST_CASE("interior mask") {
    const Configuration c = line({{0, 0}, {49, 0}, {-45, 10}});
    const InteriorMask m = interior_mask(c, 5);
    CHECK(m[0]);
    CHECK_FALSE(m[1]);
    CHECK(m[2]);
    CHECK(m.count() == 2);
    CHECK(default_margin(0.25) == doctest::Approx(6));
  }
}
