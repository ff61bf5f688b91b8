#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "orlicz/analysis.hpp"
#include "orlicz/errors.hpp"

using namespace orlicz;

TEST_CASE("identity differential field is flat") {
  const ExtensionMesh mesh = build_extension_mesh(BoundaryHomeo::identity(), 6);
  const GridField field = sample_differential_field(mesh, 64);
  REQUIRE(field.resolution == 64);
  REQUIRE(field.values.size() == 64 * 64);
  for (std::size_t c = 0; c < field.values.size(); ++c) {
    CHECK(field.mask[c] == 1);
    CHECK(field.values[c] == doctest::Approx(1.0).epsilon(1e-10));
  }
  CHECK_THROWS_AS(sample_differential_field(mesh, 1), config_error);
  CHECK_THROWS_AS(sample_differential_field(mesh, 8192), config_error);
}

TEST_CASE("differential field integrates the operator norm") {
  // Cell averages times cell area must reproduce the strip-wise integral of
  // sigma1, which the energy report already sums through Phi = t.
  const ExtensionMesh mesh = build_extension_mesh(BoundaryHomeo::power(0.5), 8);
  const GridField field = sample_differential_field(mesh, 256);
  double integral = 0.0;
  for (std::size_t c = 0; c < field.values.size(); ++c) integral += field.values[c];
  integral *= field.cell_area();

  double expected = 0.0;
  for (const auto& strip : mesh.strips)
    for (const TriangleMap& t : strip) expected += t.sigma1 * t.domain_area();
  const auto& finest = mesh.level_maps.back();
  for (std::size_t j = 0; j < finest.slopes.size(); ++j)
    expected += std::max(finest.slopes[j], 1.0) *
                (finest.domain_breaks[j + 1] - finest.domain_breaks[j]) *
                std::ldexp(1.0, -mesh.depth);
  CHECK(integral == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("maximal transform matches a direct reference") {
  const std::size_t m = 16;
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> dist(0.0, 4.0);
  GridField field;
  field.resolution = m;
  field.values.resize(m * m);
  field.mask.assign(m * m, 1);
  for (std::size_t c = 0; c < m * m; ++c) {
    field.values[c] = dist(rng);
    if (c % 7 == 3) field.mask[c] = 0;
  }

  const GridField mf = maximal_transform(field);
  const std::vector<double> expected = oracles::brute_force_maximal(field.values, field.mask, m);
  for (std::size_t c = 0; c < m * m; ++c) {
    CHECK(mf.values[c] == doctest::Approx(expected[c]).epsilon(1e-12));
    if (field.mask[c] == 0) CHECK(mf.values[c] == 0.0);
    else CHECK(mf.values[c] >= field.values[c]);
  }
}

TEST_CASE("maximal transform rejects malformed fields") {
  GridField bad;
  bad.resolution = 4;
  bad.values.assign(16, 1.0);
  bad.mask.assign(15, 1);
  CHECK_THROWS_AS(maximal_transform(bad), data_error);
  bad.mask.assign(16, 1);
  bad.values[3] = -1.0;
  CHECK_THROWS_AS(maximal_transform(bad), data_error);
}

TEST_CASE("maximal modular bound stays within a small constant") {
  // Frozen from measurements at resolutions 128..1024: ratio 0.754 for the
  // mild power boundary, 1.14..1.17 for the strong one.
  const NFunction nf = NFunction::power_log(2.0, 1.0);
  SUBCASE("mild power boundary") {
    const ExtensionMesh mesh = build_extension_mesh(BoundaryHomeo::power(0.5), 10);
    const GridField field = sample_differential_field(mesh, 128);
    const MaximalBound bound = maximal_inequality_test(field, nf, 2.0, 1.0);
    CHECK(std::isfinite(bound.lhs));
    CHECK(bound.lhs > 0.0);
    CHECK(bound.ratio == doctest::Approx(0.7538).epsilon(0.01));
    CHECK(bound.ratio < 1.0);
  }
  SUBCASE("strong power boundary") {
    const ExtensionMesh mesh = build_extension_mesh(BoundaryHomeo::power(0.1), 10);
    const GridField field = sample_differential_field(mesh, 128);
    const MaximalBound bound = maximal_inequality_test(field, nf, 2.0, 1.0);
    CHECK(bound.ratio > 1.0);
    CHECK(bound.ratio < 2.0);
  }
  SUBCASE("preconditions") {
    const ExtensionMesh mesh = build_extension_mesh(BoundaryHomeo::identity(), 4);
    const GridField field = sample_differential_field(mesh, 16);
    CHECK_THROWS_AS(maximal_inequality_test(field, NFunction::exp_residual(), 2.0, 1.0),
                    precondition_error);
    CHECK_THROWS_AS(maximal_inequality_test(field, NFunction::power(2.0), 3.0, 1.0),
                    precondition_error);
  }
}

TEST_CASE("window probe bounds the interval image from above") {
  const ExtensionMesh mesh = build_extension_mesh(BoundaryHomeo::identity(), 8);
  const DyadicImageTable& table = mesh.table;

  SUBCASE("identity has closed-form slack") {
    // lhs = 4^-n; the window is 3s x 3s with unit differential, clipped in x
    // near the two ends.
    for (int n = 2; n <= 6; ++n) {
      const std::size_t mid = std::size_t{1} << (n - 1);
      const WindowProbe probe = onlyif_probe(mesh, table, n, mid);
      CHECK(probe.lhs == doctest::Approx(std::ldexp(1.0, -2 * n)).epsilon(1e-12));
      CHECK(probe.rhs == doctest::Approx(9.0 * std::ldexp(1.0, -2 * n)).epsilon(1e-9));
      CHECK(probe.slack() == doctest::Approx(9.0).epsilon(1e-9));
      const WindowProbe edge = onlyif_probe(mesh, table, n, 1);
      CHECK(edge.rhs == doctest::Approx(6.0 * std::ldexp(1.0, -2 * n)).epsilon(1e-9));
    }
  }
  SUBCASE("window factor scales the rectangle") {
    const WindowProbe p2 = onlyif_probe(mesh, table, 4, 8, 2.0);
    CHECK(p2.window.xhi - p2.window.xlo == doctest::Approx(2.0 / 16.0).epsilon(1e-12));
    CHECK(p2.rhs == doctest::Approx(4.0 * std::ldexp(1.0, -8)).epsilon(1e-9));
  }
  SUBCASE("guards") {
    CHECK_THROWS_AS(onlyif_probe(mesh, table, 8, 1), config_error);
    CHECK_THROWS_AS(onlyif_probe(mesh, table, 3, 0), config_error);
    CHECK_THROWS_AS(onlyif_probe(mesh, table, 3, 9), config_error);
    CHECK_THROWS_AS(onlyif_probe(mesh, table, 3, 1, 0.0), config_error);
  }
}

TEST_CASE("window lower bound holds across the corpus") {
  const std::vector<BoundaryHomeo> corpus{
      BoundaryHomeo::identity(), BoundaryHomeo::power(0.5), BoundaryHomeo::power(0.1),
      BoundaryHomeo::random_piecewise_linear(7, 16)};
  for (const BoundaryHomeo& bh : corpus) {
    CAPTURE(bh.label());
    const ExtensionMesh mesh = build_extension_mesh(bh, 8);
    for (int n = 0; n <= 6; ++n) {
      for (std::size_t k = 1; k <= (std::size_t{1} << n); ++k) {
        const WindowProbe probe = onlyif_probe(mesh, mesh.table, n, k);
        CHECK(probe.lhs <= probe.rhs * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("superadditivity collapses each dyadic level") {
  const std::vector<BoundaryHomeo> corpus{
      BoundaryHomeo::power(0.1), BoundaryHomeo::cantor_approximant(8, 0.3),
      BoundaryHomeo::random_piecewise_linear(7, 16)};
  const std::vector<NFunction> nfs{NFunction::power(2.0), NFunction::power(3.0),
                                   NFunction::power_log(2.0, 1.0)};
  for (const BoundaryHomeo& bh : corpus) {
    CAPTURE(bh.label());
    const DyadicImageTable table = image_lengths(bh, 8);
    for (const NFunction& nf : nfs) {
      for (int level = 1; level <= 8; ++level) {
        const DominationRow row = level_domination(table, nf, level);
        CHECK(row.lhs <= row.rhs * (1.0 + 1e-12));
        CHECK(row.lhs > 0.0);
      }
    }
    CHECK_THROWS_AS(level_domination(table, nfs[0], 0), config_error);
    CHECK_THROWS_AS(level_domination(table, nfs[0], 9), config_error);
  }
}

TEST_CASE("poisson extension of the identity is the identity") {
  const BoundaryHomeo bh = BoundaryHomeo::identity();
  for (double r : {0.0, 0.3, 0.7, 0.9}) {
    for (int i = 0; i < 8; ++i) {
      const double theta = 2.0 * std::numbers::pi * i / 8.0;
      const Vec2 p = poisson_extension(bh, r, theta);
      CHECK(p.x == doctest::Approx(r * std::cos(theta)).epsilon(1e-6));
      CHECK(p.y == doctest::Approx(r * std::sin(theta)).epsilon(1e-6));
    }
  }
}

TEST_CASE("poisson extension respects rotation and stays inside the disk") {
  const Vec2 rotated = poisson_extension(BoundaryHomeo::identity(), 0.5, 0.0, {}, 0.25);
  CHECK(rotated.x == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(rotated.y == doctest::Approx(0.5).epsilon(1e-6));

  const BoundaryHomeo bh = BoundaryHomeo::power(0.5);
  for (double r : {0.2, 0.6, 0.9}) {
    const Vec2 p = poisson_extension(bh, r, 1.0);
    CHECK(std::hypot(p.x, p.y) < 1.0);
  }

  CHECK_THROWS_AS(poisson_extension(bh, 0.995, 0.0), resolution_error);
  CHECK_THROWS_AS(poisson_extension(bh, -0.1, 0.0), std::domain_error);
  CHECK_THROWS_AS(poisson_extension(bh, 0.5, 0.0, {.nodes = 8}), config_error);
}

TEST_CASE("theorem experiment couples energies to boundary sums") {
  const ExperimentVerdict v = theorem_experiment(BoundaryHomeo::power(0.5),
                                                 NFunction::power(2.0),
                                                 NFunction::power(2.0), 10);
  CHECK(!v.inconclusive);
  CHECK(v.consistent);
  CHECK(v.douglas_fwd == Trend::converging);
  CHECK(v.douglas_inv == Trend::converging);
  CHECK(v.energy_fwd == Trend::converging);
  CHECK(v.energy_inv == Trend::converging);
  // Frozen from depth-12 measurements: corpus couplings stay below 1.3.
  CHECK(v.coupling_fwd > 0.0);
  CHECK(v.coupling_fwd < 4.0);
  CHECK(v.coupling_inv > 0.0);
  CHECK(v.coupling_inv < 4.0);
  CHECK(!v.ainc_fwd.fails);

  CHECK_THROWS_AS(theorem_experiment(BoundaryHomeo::power(0.5), NFunction::exp_residual(),
                                     NFunction::power(2.0), 10),
                  precondition_error);
  CHECK_THROWS_AS(theorem_experiment(BoundaryHomeo::power(0.5), NFunction::power(2.0),
                                     NFunction::power(2.0), 1),
                  config_error);
}

TEST_CASE("divergent data yields a consistent negative verdict") {
  const ExperimentVerdict v = theorem_experiment(BoundaryHomeo::power(0.1),
                                                 NFunction::power(3.0),
                                                 NFunction::power(3.0), 12);
  CHECK(!v.inconclusive);
  CHECK(v.douglas_fwd == Trend::diverging);
  CHECK(v.energy_fwd == Trend::diverging);
}

TEST_CASE("corollary experiment demands an integrable tail") {
  const CorollaryReport rep = corollary_experiment(BoundaryHomeo::cantor_approximant(8, 0.3),
                                                   NFunction::power_log(2.0, -2.0), 10);
  CHECK(rep.tail_verdict == Trend::converging);
  CHECK(rep.tail_value == doctest::Approx(1.1417941356485453).epsilon(1e-4));
  CHECK(rep.douglas_fwd == Trend::converging);
  CHECK(rep.douglas_inv == Trend::converging);
  CHECK(rep.energy_fwd == Trend::converging);
  CHECK(rep.energy_inv == Trend::converging);
  CHECK(rep.pass);

  CHECK_THROWS_AS(corollary_experiment(BoundaryHomeo::identity(), NFunction::power(2.0), 8),
                  precondition_error);
  CHECK_THROWS_AS(corollary_experiment(BoundaryHomeo::identity(), NFunction::exp_residual(), 8),
                  precondition_error);
}
