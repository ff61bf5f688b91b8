#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/nfunction.hpp"

using namespace orlicz;

namespace {
const double kE = std::numbers::e;
}

TEST_CASE("closed forms agree with the integrated density") {
  const std::vector<NFunction> fams = {
      NFunction::power(2.0), NFunction::power(3.0), NFunction::power(2.5),
      NFunction::power_log(2.0, 1.0), NFunction::power_log(2.0, -2.0),
      NFunction::power_log(1.5, 0.5), NFunction::exp_residual()};
  for (const auto& nf : fams) {
    CAPTURE(nf.label());
    CHECK(nf(0.0) == 0.0);
    for (double t : {0.25, 1.0, 3.0, 10.0}) {
      const double direct = nf(t);
      const double integrated =
          oracles::adaptive_simpson([&](double s) { return nf.density(s); }, 0.0, t, 1e-13);
      CHECK(direct == doctest::Approx(integrated).epsilon(1e-9));
    }
  }
}

TEST_CASE("N-function shape: superlinear at infinity, sublinear at zero") {
  for (const auto& nf : {NFunction::power(2.0), NFunction::power_log(2.0, -2.0),
                         NFunction::exp_residual()}) {
    CAPTURE(nf.label());
    CHECK(nf(1e-8) / 1e-8 < 1e-3);
    CHECK(nf(1e6) / 1e6 > 1e3);
    double prev = 0.0;
    for (double t = 0.5; t <= 64.0; t *= 2.0) {
      const double cur = nf(t);
      CHECK(cur > prev);
      prev = cur;
    }
  }
}

TEST_CASE("evaluation guards") {
  const NFunction nf = NFunction::power(2.0);
  CHECK_THROWS_AS(nf(-1.0), std::domain_error);
  CHECK_THROWS_AS(nf(std::numeric_limits<double>::infinity()), std::domain_error);
  CHECK_THROWS_AS(NFunction::power(1.0), config_error);
  CHECK_THROWS_AS(NFunction::power(0.5), config_error);
  CHECK_THROWS_AS(NFunction::power_log(2.0, std::nan("")), config_error);
}

TEST_CASE("with_nfunction_kernel matches operator()") {
  for (const auto& nf : {NFunction::power(2.7), NFunction::power_log(2.0, 1.0),
                         NFunction::power_log(3.0, -1.0), NFunction::exp_residual()}) {
    with_nfunction_kernel(nf, [&](auto phi) {
      for (double t : {0.0, 0.3, 1.0, 7.5, 40.0}) CHECK(phi(t) == nf(t));
    });
  }
}

TEST_CASE("doubling constants") {
  SUBCASE("power p has constant 2^p") {
    for (double p : {2.0, 3.0, 2.5}) {
      const DoublingCheck c = check_doubling(NFunction::power(p));
      CHECK(c.constant == doctest::Approx(std::pow(2.0, p)).epsilon(1e-9));
      CHECK_FALSE(c.unbounded);
    }
  }
  SUBCASE("log corrections stay bounded") {
    CHECK_FALSE(check_doubling(NFunction::power_log(2.0, 1.0)).unbounded);
    CHECK_FALSE(check_doubling(NFunction::power_log(2.0, -2.0)).unbounded);
    const DoublingCheck c = check_doubling(NFunction::power_log(2.0, -2.0));
    CHECK(c.constant < 4.0 + 1e-9);
  }
  SUBCASE("exponential residual is flagged") {
    CHECK(check_doubling(NFunction::exp_residual()).unbounded);
  }
}

TEST_CASE("almost-increasing checks") {
  SUBCASE("power p is exactly increasing at its own exponent") {
    const AincCheck c = check_ainc(NFunction::power(2.0), 2.0);
    CHECK(c.constant == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(c.fails);
  }
  SUBCASE("negative log correction needs a reduced exponent") {
    const NFunction nf = NFunction::power_log(2.0, -2.0);
    CHECK_FALSE(check_ainc(nf, default_growth_exponent(nf)).fails);
    CHECK(check_ainc(nf, 2.0).constant > 1.0);
  }
  SUBCASE("t^3 against p=2 is increasing, reverse pairing is not constant-1") {
    CHECK_FALSE(check_ainc(NFunction::power(3.0), 2.0).fails);
    CHECK(check_ainc(NFunction::power(2.0), 3.0).fails);
  }
}

TEST_CASE("superadditivity") {
  SUBCASE("defect at (1,1) for t^2 log(e+t) from the closed form") {
    const double expected = 4.0 * std::log(kE + 2.0) - 2.0 * std::log(kE + 1.0);
    CHECK(expected == doctest::Approx(3.5792554806917587).epsilon(1e-12));
    CHECK(superadditivity_defect(NFunction::power_log(2.0, 1.0), 1.0, 1.0) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("defect is nonnegative across families and arguments") {
    for (const auto& nf : {NFunction::power(2.0), NFunction::power(3.0),
                           NFunction::power_log(2.0, 1.0), NFunction::power_log(2.0, -2.0),
                           NFunction::exp_residual()}) {
      for (double a : {0.1, 1.0, 5.0})
        for (double b : {0.2, 2.0, 8.0}) CHECK(superadditivity_defect(nf, a, b) >= -1e-12);
    }
  }
}

TEST_CASE("tail integral") {
  SUBCASE("t^2: octave terms are flat log 2, diverging") {
    const TailIntegral tail = tail_integral(NFunction::power(2.0));
    CHECK(tail.verdict == Trend::diverging);
    CHECK(tail.octave_terms.front() == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    CHECK(tail.octave_terms.back() == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    CHECK(tail.value == doctest::Approx(30.0 * std::log(2.0)).epsilon(1e-9));
    CHECK(tail.discrete_verdict == Trend::diverging);
  }
  SUBCASE("t^3 diverges fast") {
    CHECK(tail_integral(NFunction::power(3.0)).verdict == Trend::diverging);
  }
  SUBCASE("t^2/log^2(e+t) converges and matches the adaptive oracle") {
    const NFunction nf = NFunction::power_log(2.0, -2.0);
    const TailIntegral tail = tail_integral(nf);
    CHECK(tail.verdict == Trend::converging);
    CHECK(tail.discrete_verdict == Trend::converging);
    const double oracle = oracles::adaptive_simpson_log(
        [&](double t) { return nf(t) / (t * t * t); }, 1.0, pow2(30), 1e-12);
    CHECK(oracle == doctest::Approx(1.1417941356485453).epsilon(1e-10));
    CHECK(tail.value == doctest::Approx(oracle).epsilon(1e-6));
    CHECK(tail.discrete_value == doctest::Approx(1.3722659379968506).epsilon(1e-9));
  }
  SUBCASE("octave terms sum to the value") {
    const TailIntegral tail = tail_integral(NFunction::power_log(2.0, 1.0));
    double s = 0.0;
    for (double t : tail.octave_terms) s += t;
    CHECK(s == doctest::Approx(tail.value).epsilon(1e-12));
  }
}

TEST_CASE("default growth exponents") {
  CHECK(default_growth_exponent(NFunction::power(2.0)) == 2.0);
  CHECK(default_growth_exponent(NFunction::power(3.0)) == 3.0);
  CHECK(default_growth_exponent(NFunction::power_log(2.0, 1.0)) == 2.0);
  CHECK(default_growth_exponent(NFunction::power_log(2.0, -2.0)) < 2.0);
  CHECK(default_growth_exponent(NFunction::exp_residual()) == 2.0);
}

TEST_CASE("growth report composition") {
  const NFunction nf = NFunction::power_log(2.0, -2.0);
  const GrowthReport r = growth_report(nf, default_growth_exponent(nf));
  CHECK(r.doubling_ok);
  CHECK(r.ainc_ok);
  CHECK(r.tail_verdict == Trend::converging);
  CHECK(r.tail_octaves == 30);
  CHECK(r.tail_value == doctest::Approx(1.1417941356485453).epsilon(1e-4));

  const GrowthReport bad = growth_report(NFunction::exp_residual(), 2.0);
  CHECK_FALSE(bad.doubling_ok);
}

TEST_CASE("labels and slugs are stable") {
  CHECK(NFunction::power(2.0).label() == "t^2");
  CHECK(NFunction::power(2.0).slug() == "power_2");
  CHECK(NFunction::power_log(2.0, 1.0).slug() == "power_log_2_1");
  CHECK(NFunction::exp_residual().slug() == "exp_residual");
}
