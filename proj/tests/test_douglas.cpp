#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "orlicz/douglas.hpp"
#include "orlicz/errors.hpp"

using namespace orlicz;

TEST_CASE("trend verdict classifies the tail ratio window") {
  const double thr = 0.98;

  SUBCASE("geometric decay converges") {
    const std::vector<double> terms{1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625};
    CHECK(trend_verdict(terms, thr) == Trend::converging);
  }
  SUBCASE("constant terms diverge") {
    const std::vector<double> terms{1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
    CHECK(trend_verdict(terms, thr) == Trend::diverging);
  }
  SUBCASE("growth diverges") {
    const std::vector<double> terms{1.0, 2.0, 4.0, 8.0, 16.0, 32.0};
    CHECK(trend_verdict(terms, thr) == Trend::diverging);
  }
  SUBCASE("ratios straddling the threshold are inconclusive") {
    const std::vector<double> terms{1.0, 0.5, 0.499, 0.498, 0.497, 0.496};
    CHECK(trend_verdict(terms, thr) == Trend::inconclusive);
  }
  SUBCASE("only the last window of ratios counts") {
    const std::vector<double> terms{5.0, 500.0, 8.0, 4.0, 2.0, 1.0, 0.5, 0.25};
    CHECK(trend_verdict(terms, thr) == Trend::converging);
  }
  SUBCASE("short sequences are inconclusive") {
    const std::vector<double> one{1.0};
    CHECK(trend_verdict(one, thr) == Trend::inconclusive);
    CHECK(trend_verdict(std::vector<double>{}, thr) == Trend::inconclusive);
  }
  SUBCASE("non-finite terms diverge") {
    const std::vector<double> terms{1.0, 0.5, std::numeric_limits<double>::infinity(),
                                    0.125, 0.0625, 0.03125};
    CHECK(trend_verdict(terms, thr) == Trend::diverging);
  }
  SUBCASE("terms under the floor count as settled") {
    const std::vector<double> terms{1e-20, 1e-20, 1e-20, 1e-20, 1e-20, 1e-20};
    CHECK(trend_verdict(terms, thr) == Trend::converging);
  }
  SUBCASE("climbing out of the floor diverges") {
    const std::vector<double> terms{1e-20, 1.0, 1.0, 1.0, 1.0, 1.0};
    CHECK(trend_verdict(terms, thr) == Trend::diverging);
  }
}

TEST_CASE("identity discrete sum telescopes exactly") {
  const BoundaryHomeo bh = BoundaryHomeo::identity();
  const DyadicImageTable table = image_lengths(bh, 20);
  const DouglasReport report = discrete_douglas(table, NFunction::power(2.0), 20);

  REQUIRE(report.depth == 20);
  REQUIRE(report.per_level.size() == 20);
  for (int n = 1; n <= 20; ++n) CHECK(report.term(n) == std::ldexp(1.0, -n));
  CHECK(report.cumulative_at(20) == doctest::Approx(1.0 - std::ldexp(1.0, -20)).epsilon(1e-12));
  CHECK(report.verdict == Trend::converging);
}

TEST_CASE("discrete evaluator matches a direct dyadic oracle") {
  const BoundaryHomeo bh = BoundaryHomeo::random_piecewise_linear(11, 9);
  const DyadicImageTable table = image_lengths(bh, 8);
  const auto u = [&](double x) { return bh.forward(x); };

  for (const NFunction& nf :
       {NFunction::power(3.0), NFunction::power_log(2.0, 1.0)}) {
    const DouglasReport report = discrete_douglas(table, nf, 8);
    const std::vector<double> expected = oracles::dyadic_sum_terms(
        u, [&](double t) { return nf(t); }, 8);
    REQUIRE(report.per_level.size() == expected.size());
    for (size_t i = 0; i < expected.size(); ++i)
      CHECK(report.per_level[i] == doctest::Approx(expected[i]).epsilon(1e-13));
  }
}

TEST_CASE("power boundary sums track the closed-form decay rate") {
  SUBCASE("strong singularity with quadratic growth decays like 2^{-p}") {
    const BoundaryHomeo bh = BoundaryHomeo::power(0.1);
    const DyadicImageTable table = image_lengths(bh, 14);
    const DouglasReport report = discrete_douglas(table, NFunction::power(2.0), 14);
    CHECK(report.verdict == Trend::converging);
    const double limit = std::pow(2.0, -0.2);
    CHECK(report.term(14) / report.term(13) == doctest::Approx(limit).epsilon(0.02));
    for (int n = 2; n <= 14; ++n) {
      CHECK(report.cumulative_at(n) > report.cumulative_at(n - 1));
    }
  }
  SUBCASE("cubic growth overwhelms the same boundary") {
    const BoundaryHomeo bh = BoundaryHomeo::power(0.1);
    const DyadicImageTable table = image_lengths(bh, 14);
    const DouglasReport report = discrete_douglas(table, NFunction::power(3.0), 14);
    CHECK(report.verdict == Trend::diverging);
    for (int n = 9; n <= 14; ++n) CHECK(report.term(n) >= report.term(n - 1));
  }
  SUBCASE("mild singularity converges comfortably") {
    const BoundaryHomeo bh = BoundaryHomeo::power(0.5);
    const DyadicImageTable table = image_lengths(bh, 14);
    const DouglasReport report = discrete_douglas(table, NFunction::power(2.0), 14);
    CHECK(report.verdict == Trend::converging);
    for (int n = 9; n <= 14; ++n) CHECK(report.term(n) / report.term(n - 1) < 0.9);
  }
}

TEST_CASE("discrete evaluator rejects bad depths") {
  const DyadicImageTable table = image_lengths(BoundaryHomeo::identity(), 6);
  CHECK_THROWS_AS(discrete_douglas(table, NFunction::power(2.0), 0), config_error);
  CHECK_THROWS_AS(discrete_douglas(table, NFunction::power(2.0), 7), config_error);
}

TEST_CASE("continuous identity estimates telescope") {
  const BoundaryHomeo bh = BoundaryHomeo::identity();
  const ContinuousDouglasReport report =
      continuous_douglas(bh, NFunction::power(2.0), {.exclusion_level = 10});

  // Identity integrand is exactly 1, so each band sum is the band measure on
  // its own grid: 1/2 + 1/256 for band 2 (antipodal row halved), 2^{-b+1}
  // beyond.
  REQUIRE(report.max_level() == 10);
  CHECK(report.far_field == doctest::Approx(0.5 + 1.0 / 256.0).epsilon(1e-14));
  for (int b = 3; b <= 10; ++b)
    CHECK(report.band(b) == doctest::Approx(std::ldexp(1.0, -b + 1)).epsilon(1e-13));
  for (int l = 2; l <= 10; ++l) {
    const double expected = 1.0 - std::ldexp(1.0, -l + 1) + 1.0 / 256.0;
    CHECK(report.estimate(l) == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK(report.verdict == Trend::converging);
}

TEST_CASE("continuous evaluator is deterministic") {
  const BoundaryHomeo bh = BoundaryHomeo::random_piecewise_linear(3, 12);
  const QuadratureSpec quad{.exclusion_level = 8, .grid = 0};
  const ContinuousDouglasReport a = continuous_douglas(bh, NFunction::power_log(2.0, 1.0), quad);
  const ContinuousDouglasReport b = continuous_douglas(bh, NFunction::power_log(2.0, 1.0), quad);
  REQUIRE(a.band_terms.size() == b.band_terms.size());
  for (size_t i = 0; i < a.band_terms.size(); ++i) CHECK(a.band_terms[i] == b.band_terms[i]);
}

TEST_CASE("continuous quadrature matches adaptive reference bands") {
  // Reference values from adaptive double quadrature of
  // Phi(arc(u(x),u(y))/arc(x,y)) over the band {2^-b <= arc < 2^-b+1} for
  // u = x^0.1, Phi = t^2.
  const BoundaryHomeo bh = BoundaryHomeo::power(0.1);
  const ContinuousDouglasReport report =
      continuous_douglas(bh, NFunction::power(2.0), {.exclusion_level = 12});
  CHECK(report.band(2) == doctest::Approx(0.068248).epsilon(0.01));
  CHECK(report.band(12) == doctest::Approx(0.243349).epsilon(0.01));
  // The pre-asymptotic hump: band terms rise through band 10 before the
  // 2^{-1/5} geometric decay takes over.
  CHECK(report.band(9) > report.band(5));
}

TEST_CASE("quadrature guards reject unresolvable specs") {
  const BoundaryHomeo bh = BoundaryHomeo::identity();
  const NFunction nf = NFunction::power(2.0);
  CHECK_THROWS_AS(continuous_douglas(bh, nf, {.exclusion_level = 1}), config_error);
  CHECK_THROWS_AS(continuous_douglas(bh, nf, {.exclusion_level = 23}), config_error);
  CHECK_THROWS_AS(continuous_douglas(bh, nf, {.exclusion_level = 8, .grid = 100}),
                  resolution_error);

  SUBCASE("grid caps round down to a power of two") {
    const ContinuousDouglasReport report =
        continuous_douglas(bh, nf, {.exclusion_level = 8, .grid = 3000});
    CHECK(report.grid == 2048);
    CHECK(report.max_level() == 8);
  }
  SUBCASE("the minimal resolving cap is accepted") {
    const ContinuousDouglasReport report =
        continuous_douglas(bh, nf, {.exclusion_level = 4, .grid = 32});
    CHECK(report.grid == 32);
    CHECK(report.estimate(4) > report.estimate(2));
  }
}

TEST_CASE("matched truncations of both evaluators stay within a constant") {
  SUBCASE("identity ratio settles to one") {
    const EquivalenceReport eq =
        equivalence_report(BoundaryHomeo::identity(), NFunction::power(2.0), 8);
    REQUIRE(eq.rows.size() == 7);
    for (const EquivalenceRow& row : eq.rows) {
      CHECK(row.ratio > 0.5);
      CHECK(row.ratio < 1.5);
    }
    CHECK(eq.rows.back().ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eq.verdicts_agree);
    CHECK(eq.discrete.verdict == Trend::converging);
  }
  SUBCASE("singular power boundary stays within two orders") {
    const EquivalenceReport eq = equivalence_report(
        BoundaryHomeo::power(0.1), NFunction::power(2.0), 10, {.exclusion_level = 16});
    CHECK(eq.verdicts_agree);
    CHECK(eq.continuous.verdict == Trend::converging);
    for (const EquivalenceRow& row : eq.rows) {
      if (row.level < 6) continue;
      CHECK(row.ratio > 1.0 / 64.0);
      CHECK(row.ratio < 64.0);
    }
  }
  SUBCASE("shallow exclusion levels are rejected") {
    CHECK_THROWS_AS(equivalence_report(BoundaryHomeo::identity(), NFunction::power(2.0), 8,
                                       {.exclusion_level = 6}),
                    config_error);
    CHECK_THROWS_AS(equivalence_report(BoundaryHomeo::identity(), NFunction::power(2.0), 1),
                    config_error);
  }
}
