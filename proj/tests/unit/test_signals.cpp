// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "coopgeo/error.hpp"
#include "coopgeo/quadrature.hpp"
#include "coopgeo/rng.hpp"
#include "coopgeo/signals.hpp"
#include "coopgeo/special.hpp"
#include "coopgeo/stats.hpp"

using namespace coopgeo;

TEST_SUITE("signals") {
  TEST_CASE("special functions") {
    CHECK(bessel_i0_scaled(0) == doctest::Approx(1));
    CHECK(bessel_i0_scaled(1) == doctest::Approx(0.4657596075936404).epsilon(1e-12));
    CHECK(bessel_i0_scaled(1e4) == doctest::Approx(1 / std::sqrt(2 * M_PI * 1e4)).epsilon(1e-4));
    CHECK(rayleigh_cdf(2, 1) == doctest::Approx(1 - std::exp(-2)).epsilon(1e-14));
    CHECK(rice_cdf(50, 2, 0.7) == doctest::Approx(1).epsilon(1e-10));
    CHECK(rice_pdf(1.3, 0, 0.8) == doctest::Approx(rayleigh_pdf(1.3, 0.8)).epsilon(1e-12));
    CHECK(rice_cdf(rice_upper(3, 0.5), 3, 0.5) == doctest::Approx(1).epsilon(1e-9));
  }

  TEST_CASE("path loss validation") {
    CHECK_THROWS_AS(make_path_loss(1, 2).validate(), ValidationError);
    CHECK_THROWS_AS(make_path_loss(0, 4).validate(), ValidationError);
    const PathLoss pl = make_path_loss(2, 4);
    CHECK(pl.mean_at(2) == doctest::Approx(2.0 / 16));
    CHECK(pl.rate_at(2) == doctest::Approx(8));
  }

  TEST_CASE("model tokens") {
    CHECK(parse_model("nsc").kind == ModelKind::nsc);
    CHECK(parse_model("off:q=0.3").q == doctest::Approx(0.3));
    CHECK(parse_model("ph:coherent").phase == Phase::coherent);
    CHECK(parse_model("max").token() == "max");
    CHECK_THROWS_AS(parse_model("off:q=1.5"), ValidationError);
    CHECK_THROWS_AS(parse_model("bogus"), ValidationError);
  }

  TEST_CASE("nsc ccdf uses the correct coefficients") {
    const PathLoss pl = make_path_loss(1, 4);
    const SignalModel nsc = SignalModel::nsc();
    const double z = std::pow(2.0, 0.25);
    // Rates 1 and 2: (2 e^{-T} - e^{-2T}) / (2 - 1).
    CHECK(pair_ccdf(nsc, pl, 1, z, 1) == doctest::Approx(2 * std::exp(-1) - std::exp(-2)).epsilon(1e-12));
    // Nearly equal rates: Erlang-2 limit.
    CHECK(pair_ccdf(nsc, pl, 1, 1, 1) == doctest::Approx(2 * std::exp(-1)).epsilon(1e-5));
    CHECK(pair_ccdf(nsc, pl, 1, 1, 0) == doctest::Approx(1));
  }

  TEST_CASE("ccdf, laplace transform and mean agree with simulation") {
    const PathLoss pl = make_path_loss(1, 3);
    Rng rng(4);
    for (const char* tok : {"nsc", "off:q=0.5", "max"}) {
      const SignalModel m = parse_model(tok);
      MeanAccumulator cov, lt, mean;
      for (int i = 0; i < 100000; ++i) {
        const double x = pair_signal(m, pl, 0.9, 1.4, rng);
        cov.add(x > 0.8 ? 1 : 0);
        lt.add(std::exp(-0.7 * x));
        mean.add(x);
      }
      INFO(tok);
      CHECK(std::abs(cov.mean() - pair_ccdf(m, pl, 0.9, 1.4, 0.8)) < 4 * cov.stderr_of_mean() + 1e-3);
      CHECK(std::abs(lt.mean() - pair_lt(m, pl, 0.9, 1.4, 0.7)) < 4 * lt.stderr_of_mean() + 1e-3);
      CHECK(std::abs(mean.mean() - mean_pair_signal(m, pl, 0.9, 1.4)) < 5 * mean.stderr_of_mean());
      CHECK(pair_lt_complement(m, pl, 0.9, 1.4, 1e-9) ==
            doctest::Approx(1e-9 * mean_pair_signal(m, pl, 0.9, 1.4)).epsilon(1e-4));
    }
  }

  TEST_CASE("phase models have a mean but no tail form") {
    const PathLoss pl = make_path_loss(1, 3);
    Rng rng(5);
    for (const char* tok : {"ph:coherent", "ph:uniform"}) {
      const SignalModel m = parse_model(tok);
      MeanAccumulator mean;
      for (int i = 0; i < 100000; ++i) mean.add(pair_signal(m, pl, 0.9, 1.4, rng));
      INFO(tok);
      CHECK(std::abs(mean.mean() - mean_pair_signal(m, pl, 0.9, 1.4)) < 5 * mean.stderr_of_mean());
      CHECK_THROWS_AS(pair_lt(m, pl, 0.9, 1.4, 1), UnsupportedError);
    }
  }

  TEST_CASE("model ordering") {
    const PathLoss pl = make_path_loss(1, 4);
    for (double t : {0.1, 1.0, 10.0}) {
      CHECK(pair_ccdf(SignalModel::max(), pl, 1, 1.3, t) <= pair_ccdf(SignalModel::nsc(), pl, 1, 1.3, t));
      CHECK(pair_ccdf(SignalModel::off(0.5), pl, 1, 1.3, t) <= pair_ccdf(SignalModel::max(), pl, 1, 1.3, t));
    }
  }

  TEST_CASE("tail-form models are checked") {
    CHECK_THROWS_AS(SignalModel::tail_form(
                        [](double, double, const PathLoss&) { return std::vector<TailTerm>{{2, 1}}; },
                        "bad"),
                    ValidationError);
    const auto ok = SignalModel::tail_form(
        [](double r, double, const PathLoss& pl) {
          return std::vector<TailTerm>{{1, pl.rate_at(r)}};
        },
        "near");
    CHECK(pair_ccdf(ok, make_path_loss(1, 4), 1, 2, 0.5) == doctest::Approx(std::exp(-0.5)));
  }
}
