#include "orlicz/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "orlicz/errors.hpp"
#include "orlicz/numeric.hpp"

namespace orlicz {

namespace {

void validate_field(const GridField& field, const char* who) {
  const std::size_t m = field.resolution;
  if (m == 0 || field.values.size() != m * m || field.mask.size() != m * m)
    throw data_error(std::string(who) + ": malformed grid field");
  for (double v : field.values)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw data_error(std::string(who) + ": field values must be finite and nonnegative");
}

// Integral of max(slope, 1) of the level map over [a, b].
double slope_integral(const LevelMap& lm, double a, double b) {
  if (!(b > a)) return 0.0;
  const auto& db = lm.domain_breaks;
  std::size_t j = static_cast<std::size_t>(
      std::upper_bound(db.begin(), db.end(), a) - db.begin());
  if (j > 0) --j;
  j = std::min(j, db.size() - 2);
  double total = 0.0;
  for (; j < lm.slopes.size() && db[j] < b; ++j) {
    const double lo = std::max(a, db[j]);
    const double hi = std::min(b, db[j + 1]);
    if (hi > lo) total += std::max(lm.slopes[j], 1.0) * (hi - lo);
  }
  return total;
}

}  // namespace

GridField sample_differential_field(const ExtensionMesh& mesh, std::size_t resolution) {
  if (resolution < 2 || resolution > 4096)
    throw config_error("sample_differential_field: resolution out of range");
  const std::size_t m = resolution;
  const double md = static_cast<double>(m);

  GridField field;
  field.resolution = m;
  field.values.assign(m * m, 0.0);
  field.mask.assign(m * m, 1);

  const auto cell_range = [&](double lo, double hi, std::size_t& c0, std::size_t& c1) {
    c0 = static_cast<std::size_t>(std::clamp(std::floor(lo * md), 0.0, md - 1.0));
    c1 = static_cast<std::size_t>(std::clamp(std::floor(hi * md), 0.0, md - 1.0));
  };

  for (const auto& strip : mesh.strips) {
    for (const TriangleMap& t : strip) {
      const auto& v = t.domain_vertices;
      const double xlo = std::min({v[0].x, v[1].x, v[2].x});
      const double xhi = std::max({v[0].x, v[1].x, v[2].x});
      const double ylo = std::min({v[0].y, v[1].y, v[2].y});
      const double yhi = std::max({v[0].y, v[1].y, v[2].y});
      std::size_t j0, j1, i0, i1;
      cell_range(xlo, xhi, j0, j1);
      cell_range(ylo, yhi, i0, i1);
      for (std::size_t i = i0; i <= i1; ++i) {
        for (std::size_t j = j0; j <= j1; ++j) {
          const Rect cell{static_cast<double>(j) / md, static_cast<double>(j + 1) / md,
                          static_cast<double>(i) / md, static_cast<double>(i + 1) / md};
          const double a = clip_triangle_rect_area(v, cell);
          if (a > 0.0) field.values[i * m + j] += t.sigma1 * a;
        }
      }
    }
  }

  // Below the finest strip the map is the finest level map times identity in
  // y, so the differential norm is max(slope, 1) columnwise.
  const double floor_y = pow2(-mesh.depth);
  const auto& finest = mesh.level_maps.back();
  std::vector<double> column(m);
  for (std::size_t j = 0; j < m; ++j)
    column[j] = slope_integral(finest, static_cast<double>(j) / md,
                               static_cast<double>(j + 1) / md);
  for (std::size_t i = 0; i < m; ++i) {
    const double y0 = static_cast<double>(i) / md;
    const double y1 = static_cast<double>(i + 1) / md;
    const double dy = std::min(y1, floor_y) - y0;
    if (dy <= 0.0) break;
    for (std::size_t j = 0; j < m; ++j) field.values[i * m + j] += column[j] * dy;
  }

  const double inv_area = md * md;
  for (double& v : field.values) v *= inv_area;
  validate_field(field, "sample_differential_field");
  return field;
}

GridField maximal_transform(const GridField& field) {
  validate_field(field, "maximal_transform");
  const std::size_t m = field.resolution;

  // Integral images of the masked values and of the mask itself.
  std::vector<double> sum((m + 1) * (m + 1), 0.0);
  std::vector<double> cnt((m + 1) * (m + 1), 0.0);
  const auto idx = [m](std::size_t i, std::size_t j) { return i * (m + 1) + j; };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const bool in = field.mask[i * m + j] != 0;
      const double v = in ? field.values[i * m + j] : 0.0;
      sum[idx(i + 1, j + 1)] =
          v + sum[idx(i, j + 1)] + sum[idx(i + 1, j)] - sum[idx(i, j)];
      cnt[idx(i + 1, j + 1)] =
          (in ? 1.0 : 0.0) + cnt[idx(i, j + 1)] + cnt[idx(i + 1, j)] - cnt[idx(i, j)];
    }
  }
  const auto window = [&](const std::vector<double>& s, std::size_t r0, std::size_t r1,
                          std::size_t c0, std::size_t c1) {
    return s[idx(r1 + 1, c1 + 1)] - s[idx(r0, c1 + 1)] - s[idx(r1 + 1, c0)] + s[idx(r0, c0)];
  };

  GridField out;
  out.resolution = m;
  out.mask = field.mask;
  out.values.assign(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (field.mask[i * m + j] == 0) continue;
      double best = field.values[i * m + j];
      for (std::size_t r = 1; r < m; r *= 2) {
        const std::size_t r0 = i >= r ? i - r : 0;
        const std::size_t r1 = std::min(i + r, m - 1);
        const std::size_t c0 = j >= r ? j - r : 0;
        const std::size_t c1 = std::min(j + r, m - 1);
        const double count = window(cnt, r0, r1, c0, c1);
        if (count > 0.0) best = std::max(best, window(sum, r0, r1, c0, c1) / count);
      }
      out.values[i * m + j] = best;
    }
  }
  return out;
}

MaximalBound maximal_inequality_test(const GridField& field, const NFunction& nf, double p,
                                     double t0) {
  validate_field(field, "maximal_inequality_test");
  if (check_doubling(nf).unbounded)
    throw precondition_error("maximal_inequality_test: N-function fails the doubling check");
  if (check_ainc(nf, p, t0).fails)
    throw precondition_error("maximal_inequality_test: N-function fails the almost-increasing check");

  const GridField mf = maximal_transform(field);
  const std::size_t m = field.resolution;
  const double cell = field.cell_area();
  MaximalBound out;
  with_nfunction_kernel(nf, [&](auto phi) {
    KahanSum lhs, rhs;
    double cells_in = 0.0;
    for (std::size_t c = 0; c < m * m; ++c) {
      if (field.mask[c] == 0) continue;
      lhs.add(phi(mf.values[c]) * cell);
      rhs.add(phi(field.values[c]) * cell);
      cells_in += 1.0;
    }
    out.lhs = lhs.value();
    out.rhs = rhs.value() + cells_in * cell * phi(t0);
  });
  out.ratio = out.rhs > 0.0 ? out.lhs / out.rhs
                            : (out.lhs > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
  return out;
}

WindowProbe onlyif_probe(const ExtensionMesh& mesh, const DyadicImageTable& table, int n,
                         std::size_t k, double c) {
  if (n < 0 || n >= mesh.depth)
    throw config_error("onlyif_probe: level must lie below the mesh depth");
  const std::size_t count = std::size_t{1} << n;
  if (k < 1 || k > count) throw config_error("onlyif_probe: interval index out of range");
  if (!(c > 0.0) || !std::isfinite(c)) throw config_error("onlyif_probe: window factor must be positive");

  const double s = pow2(-n);
  WindowProbe probe;
  probe.lhs = s * table.at(n, k);

  const double xi = (static_cast<double>(k) - 0.5) * s;
  const double half = 0.5 * c * s;
  Rect w{xi - half, xi + half, 1.5 * s - half, 1.5 * s + half};
  w.xlo = std::max(w.xlo, 0.0);
  w.xhi = std::min(w.xhi, 1.0);
  w.ylo = std::max(w.ylo, 0.0);
  w.yhi = std::min(w.yhi, 1.0);
  probe.window = w;

  KahanSum acc;
  for (int lvl = 0; lvl < mesh.depth; ++lvl) {
    const double top = pow2(-lvl), bottom = pow2(-lvl - 1);
    if (bottom >= w.yhi || top <= w.ylo) continue;
    const std::size_t quads = std::size_t{1} << lvl;
    const double qd = static_cast<double>(quads);
    const auto q0 = static_cast<std::size_t>(std::clamp(std::floor(w.xlo * qd), 0.0, qd - 1.0));
    const auto q1 = static_cast<std::size_t>(std::clamp(std::floor(w.xhi * qd), 0.0, qd - 1.0));
    const auto& strip = mesh.strips[static_cast<std::size_t>(lvl)];
    for (std::size_t q = q0; q <= q1; ++q) {
      for (std::size_t t = 3 * q; t < 3 * q + 3; ++t) {
        const double a = clip_triangle_rect_area(strip[t].domain_vertices, w);
        if (a > 0.0) acc.add(strip[t].sigma1 * a);
      }
    }
  }
  const double floor_y = pow2(-mesh.depth);
  if (w.ylo < floor_y) {
    const double dy = std::min(w.yhi, floor_y) - w.ylo;
    if (dy > 0.0) acc.add(dy * slope_integral(mesh.level_maps.back(), w.xlo, w.xhi));
  }
  probe.rhs = acc.value();
  return probe;
}

DominationRow level_domination(const DyadicImageTable& table, const NFunction& nf, int level) {
  if (level < 1 || level > table.depth)
    throw config_error("level_domination: level exceeds table depth");
  const double scale = pow2(level);
  const double weight = pow2(-2 * level);
  DominationRow row;
  with_nfunction_kernel(nf, [&](auto phi) {
    KahanSum lhs;
    const auto& lens = table.lengths[static_cast<std::size_t>(level)];
    for (double len : lens) lhs.add(phi(len * scale) * weight);
    row.lhs = lhs.value();
    row.rhs = phi(scale) * weight;
  });
  return row;
}

Vec2 poisson_extension(const BoundaryHomeo& bh, double r, double theta, PoissonQuadrature quad,
                       double rotation) {
  if (!(r >= 0.0) || !std::isfinite(theta) || !std::isfinite(rotation))
    throw std::domain_error("poisson_extension: invalid evaluation point");
  if (r > 0.99)
    throw resolution_error("poisson_extension: radius too close to the boundary circle");
  if (quad.nodes < 16 || quad.nodes > (std::size_t{1} << 22))
    throw config_error("poisson_extension: node count out of range");

  const std::size_t n = quad.nodes;
  const double nd = static_cast<double>(n);
  const double two_pi = 2.0 * std::numbers::pi;
  const double r2 = r * r;
  KahanSum sx, sy;
  for (std::size_t j = 0; j < n; ++j) {
    const double x = (static_cast<double>(j) + 0.5) / nd;
    const double angle = two_pi * (bh.forward(x) + rotation);
    const double kernel = (1.0 - r2) / (1.0 - 2.0 * r * std::cos(theta - two_pi * x) + r2);
    sx.add(kernel * std::cos(angle));
    sy.add(kernel * std::sin(angle));
  }
  return {sx.value() / nd, sy.value() / nd};
}

ExperimentVerdict theorem_experiment(const BoundaryHomeo& bh, const NFunction& nf_fwd,
                                     const NFunction& nf_inv, int depth) {
  if (depth < 2 || depth > 20) throw config_error("theorem_experiment: depth out of range");
  if (check_doubling(nf_fwd).unbounded)
    throw precondition_error("theorem_experiment: forward N-function fails the doubling check");
  if (check_doubling(nf_inv).unbounded)
    throw precondition_error("theorem_experiment: inverse N-function fails the doubling check");

  ExperimentVerdict v;
  v.ainc_fwd = check_ainc(nf_fwd, default_growth_exponent(nf_fwd));
  v.ainc_inv = check_ainc(nf_inv, default_growth_exponent(nf_inv));

  const DyadicImageTable table_fwd = image_lengths(bh, depth);
  const DouglasReport fwd = discrete_douglas(table_fwd, nf_fwd, depth);
  const BoundaryHomeo bh_inv = bh.inverted();
  const DyadicImageTable table_inv = image_lengths(bh_inv, depth);
  const DouglasReport inv = discrete_douglas(table_inv, nf_inv, depth);

  const ExtensionMesh mesh = build_extension_mesh(bh, depth);
  const EnergyReport efwd = orlicz_energy(mesh, nf_fwd, Direction::forward, depth);
  const EnergyReport einv = orlicz_energy(mesh, nf_inv, Direction::inverse, depth);

  v.douglas_fwd = fwd.verdict;
  v.douglas_inv = inv.verdict;
  v.energy_fwd = efwd.verdict;
  v.energy_inv = einv.verdict;
  v.inconclusive = fwd.verdict == Trend::inconclusive || inv.verdict == Trend::inconclusive ||
                   efwd.verdict == Trend::inconclusive || einv.verdict == Trend::inconclusive;
  v.consistent = !v.inconclusive && fwd.verdict == efwd.verdict && inv.verdict == einv.verdict;

  const double phi1 = nf_fwd(1.0), psi1 = nf_inv(1.0);
  for (int s = 0; s < depth; ++s) {
    const auto i = static_cast<std::size_t>(s);
    v.coupling_fwd = std::max(v.coupling_fwd,
                              efwd.cumulative[i] / (fwd.cumulative_at(s + 1) + phi1));
    v.coupling_inv = std::max(v.coupling_inv,
                              einv.cumulative[i] / (inv.cumulative_at(s + 1) + psi1));
  }
  return v;
}

CorollaryReport corollary_experiment(const BoundaryHomeo& bh, const NFunction& nf, int depth) {
  if (depth < 2 || depth > 20) throw config_error("corollary_experiment: depth out of range");
  if (check_doubling(nf).unbounded)
    throw precondition_error("corollary_experiment: N-function fails the doubling check");
  const TailIntegral tail = tail_integral(nf);
  CorollaryReport rep;
  rep.tail_value = tail.value;
  rep.tail_verdict = tail.verdict;
  if (tail.verdict != Trend::converging)
    throw precondition_error("corollary_experiment: tail integral of Phi(t)/t^3 does not converge");

  const DyadicImageTable table_fwd = image_lengths(bh, depth);
  rep.douglas_fwd = discrete_douglas(table_fwd, nf, depth).verdict;
  const BoundaryHomeo bh_inv = bh.inverted();
  const DyadicImageTable table_inv = image_lengths(bh_inv, depth);
  rep.douglas_inv = discrete_douglas(table_inv, nf, depth).verdict;

  const ExtensionMesh mesh = build_extension_mesh(bh, depth);
  rep.energy_fwd = orlicz_energy(mesh, nf, Direction::forward, depth).verdict;
  rep.energy_inv = orlicz_energy(mesh, nf, Direction::inverse, depth).verdict;

  rep.pass = rep.douglas_fwd == Trend::converging && rep.douglas_inv == Trend::converging &&
             rep.energy_fwd == Trend::converging && rep.energy_inv == Trend::converging;
  return rep;
}

}  // namespace orlicz
