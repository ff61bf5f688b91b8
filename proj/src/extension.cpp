#include "orlicz/extension.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

#include "orlicz/errors.hpp"

namespace orlicz {

namespace {

// Shared with the Douglas-condition reports: a partial-sum sequence counts as
// converging only when its last increments decay at this geometric rate.
constexpr double kTrendThreshold = 0.98;

std::string strip_quad_label(const char* what, int n, std::size_t k) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%s at strip %d quad %zu", what, n, k);
  return buf;
}

}  // namespace

double MergedPartition::max_image_excess() const {
  const double scale = pow2(level);
  double worst = 0.0;
  for (double len : image_lengths) worst = std::max(worst, len * scale - 2.0);
  return std::max(worst, 0.0);
}

MergedPartition merge_level(const DyadicImageTable& table, int level) {
  if (level < 0 || level > table.depth)
    throw config_error("merge_level: level exceeds table depth");
  const auto& row = table.lengths[static_cast<std::size_t>(level)];
  const double threshold = pow2(-level);

  MergedPartition part;
  part.level = level;
  part.group_bounds.push_back(0);
  KahanSum cum;
  for (std::size_t k = 0; k < row.size(); ++k) {
    cum.add(row[k]);
    if (cum.value() >= threshold) {
      part.group_bounds.push_back(k + 1);
      part.image_lengths.push_back(cum.value());
      cum = KahanSum{};
    }
  }
  if (part.image_lengths.empty())
    throw data_error("merge_level: no group reached the threshold; image lengths do not sum to 1");
  if (part.group_bounds.back() != row.size()) {
    part.group_bounds.back() = row.size();
    part.image_lengths.back() += cum.value();
    part.remainder_merged = true;
  }

  const std::size_t groups = part.image_lengths.size();
  const double scale = pow2(-level);
  part.domain_lengths.resize(groups);
  part.image_breaks.resize(groups + 1);
  part.short_domain.resize(groups);
  part.oversized_image.resize(groups);
  part.image_breaks[0] = 0.0;
  KahanSum prefix;
  for (std::size_t j = 0; j < groups; ++j) {
    part.domain_lengths[j] =
        static_cast<double>(part.group_bounds[j + 1] - part.group_bounds[j]) * scale;
    prefix.add(part.image_lengths[j]);
    part.image_breaks[j + 1] = prefix.value();
    part.short_domain[j] = part.domain_lengths[j] < 0.5 * threshold ? 1 : 0;
    part.oversized_image[j] = part.image_lengths[j] >= 2.0 * threshold ? 1 : 0;
  }
  // The row sums to u(1) - u(0) = 1 up to summation error; pinning the last
  // break keeps the level map onto.
  part.image_breaks[groups] = 1.0;
  return part;
}

LevelMap build_level_map(const MergedPartition& partition) {
  const std::size_t groups = partition.group_count();
  if (groups == 0 || partition.group_bounds.size() != groups + 1 ||
      partition.image_breaks.size() != groups + 1)
    throw data_error("build_level_map: malformed partition");

  LevelMap lm;
  lm.level = partition.level;
  const double scale = pow2(-partition.level);
  lm.domain_breaks.resize(groups + 1);
  lm.slopes.resize(groups);
  for (std::size_t j = 0; j <= groups; ++j)
    lm.domain_breaks[j] = static_cast<double>(partition.group_bounds[j]) * scale;
  lm.image_breaks = partition.image_breaks;
  for (std::size_t j = 0; j < groups; ++j) {
    const double dd = lm.domain_breaks[j + 1] - lm.domain_breaks[j];
    const double di = lm.image_breaks[j + 1] - lm.image_breaks[j];
    const double slope = di / dd;
    if (!(slope > 0.0) || !std::isfinite(slope))
      throw data_error("build_level_map: zero-length group");
    lm.slopes[j] = slope;
  }
  return lm;
}

namespace {

// Segment index j with breaks[j] <= v < breaks[j+1], clamped to the last
// segment for v at the right endpoint.
std::size_t segment_index(const std::vector<double>& breaks, double v) {
  const auto it = std::upper_bound(breaks.begin(), breaks.end(), v);
  std::size_t j = static_cast<std::size_t>(it - breaks.begin());
  if (j > 0) --j;
  return std::min(j, breaks.size() - 2);
}

}  // namespace

double LevelMap::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("LevelMap: argument outside [0,1]");
  const std::size_t j = segment_index(domain_breaks, x);
  if (x == domain_breaks[j]) return image_breaks[j];
  if (x == domain_breaks[j + 1]) return image_breaks[j + 1];
  const double y = image_breaks[j] + (x - domain_breaks[j]) * slopes[j];
  return std::clamp(y, image_breaks[j], image_breaks[j + 1]);
}

double LevelMap::inverse(double y) const {
  if (!(y >= 0.0 && y <= 1.0)) throw std::domain_error("LevelMap: argument outside [0,1]");
  const std::size_t j = segment_index(image_breaks, y);
  if (y == image_breaks[j]) return domain_breaks[j];
  if (y == image_breaks[j + 1]) return domain_breaks[j + 1];
  const double x = domain_breaks[j] + (y - image_breaks[j]) / slopes[j];
  return std::clamp(x, domain_breaks[j], domain_breaks[j + 1]);
}

Vec2 TriangleMap::apply_inverse(Vec2 p) const {
  const Vec2 q = p - offset;
  return {(linear.d * q.x - linear.b * q.y) / jacobian,
          (-linear.c * q.x + linear.a * q.y) / jacobian};
}

double TriangleMap::domain_area() const {
  return triangle_area(domain_vertices[0], domain_vertices[1], domain_vertices[2]);
}

double TriangleMap::image_area() const {
  return triangle_area(image_vertices[0], image_vertices[1], image_vertices[2]);
}

double TriangleMap::image_base_length() const {
  if (corner == 2) return image_vertices[2].x - image_vertices[0].x;
  return image_vertices[2].x - image_vertices[1].x;
}

namespace {

TriangleMap make_triangle(int n, std::size_t k, int corner, const std::array<Vec2, 3>& dom,
                          const std::array<Vec2, 3>& img) {
  TriangleMap t;
  t.strip = n;
  t.quad = static_cast<int>(k);
  t.corner = corner;
  t.domain_vertices = dom;
  t.image_vertices = img;
  solve_affine(dom, img, t.linear, t.offset);
  const Svd2 sv = singular_values(t.linear);
  t.sigma1 = sv.sigma1;
  t.sigma2 = sv.sigma2;
  t.jacobian = t.linear.det();
  if (!(t.jacobian > 0.0) || !std::isfinite(t.jacobian) || !std::isfinite(t.sigma1))
    throw construction_error(strip_quad_label("degenerate image triangle", n, k));
  return t;
}

}  // namespace

std::vector<TriangleMap> triangulate_strip(const LevelMap& upper, const LevelMap& lower) {
  if (lower.level != upper.level + 1)
    throw config_error("triangulate_strip: level maps must be consecutive");
  const int n = upper.level;
  if (n < 0 || n > 26) throw config_error("triangulate_strip: level out of range");
  const std::size_t quads = std::size_t{1} << n;
  const double top = pow2(-n), bottom = pow2(-n - 1);

  std::vector<TriangleMap> tris;
  tris.reserve(3 * quads);
  double gt1 = upper(0.0);
  double gb1 = lower(0.0);
  for (std::size_t k = 1; k <= quads; ++k) {
    const double x1 = static_cast<double>(k - 1) * top;
    const double x2 = static_cast<double>(k) * top;
    const double xm = x1 + bottom;
    const double gt2 = upper(x2);
    const double gbm = lower(xm);
    const double gb2 = lower(x2);

    const Vec2 X1{x1, top}, X2{x2, top}, Y1{x1, bottom}, Y2{xm, bottom}, Y3{x2, bottom};
    const Vec2 pX1{gt1, top}, pX2{gt2, top}, pY1{gb1, bottom}, pY2{gbm, bottom}, pY3{gb2, bottom};

    tris.push_back(make_triangle(n, k, 1, {X1, Y1, Y2}, {pX1, pY1, pY2}));
    tris.push_back(make_triangle(n, k, 2, {X1, Y2, X2}, {pX1, pY2, pX2}));
    tris.push_back(make_triangle(n, k, 3, {X2, Y2, Y3}, {pX2, pY2, pY3}));

    gt1 = gt2;
    gb1 = gb2;
  }
  return tris;
}

Differential differential(const TriangleMap& tm) {
  if (!(tm.jacobian > 0.0))
    throw orientation_error(strip_quad_label("nonpositive jacobian", tm.strip,
                                             static_cast<std::size_t>(tm.quad)));
  return {tm.sigma1, 1.0 / tm.sigma2, tm.jacobian};
}

std::size_t ExtensionMesh::triangle_count() const {
  std::size_t total = 0;
  for (const auto& s : strips) total += s.size();
  return total;
}

ExtensionMesh build_extension_mesh(const BoundaryHomeo& bh, int depth, int max_depth) {
  if (depth < 1) throw config_error("build_extension_mesh: depth must be at least 1");
  if (depth > max_depth || max_depth > 24)
    throw config_error("build_extension_mesh: depth exceeds the supported maximum");

  ExtensionMesh mesh{depth, bh, image_lengths(bh, depth, max_depth), {}, {}, {}};
  mesh.partitions.reserve(depth + 1);
  mesh.level_maps.reserve(depth + 1);
  for (int n = 0; n <= depth; ++n) {
    mesh.partitions.push_back(merge_level(mesh.table, n));
    mesh.level_maps.push_back(build_level_map(mesh.partitions.back()));
  }
  mesh.strips.reserve(depth);
  for (int n = 0; n < depth; ++n)
    mesh.strips.push_back(triangulate_strip(mesh.level_maps[n], mesh.level_maps[n + 1]));
  return mesh;
}

namespace {

int strip_of_height(double y, int depth) {
  if (y >= 1.0) return 0;
  const int n = static_cast<int>(std::floor(-std::log2(y)));
  return std::clamp(n, 0, depth - 1);
}

}  // namespace

const TriangleMap& ExtensionMesh::locate(Vec2 p) const {
  if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= pow2(-depth) && p.y <= 1.0))
    throw std::domain_error("locate: point outside the meshed region");
  const int n = strip_of_height(p.y, depth);
  const std::size_t quads = std::size_t{1} << n;
  const double top = pow2(-n), bottom = pow2(-n - 1);
  const std::size_t k0 =
      std::min(static_cast<std::size_t>(p.x * static_cast<double>(quads)), quads - 1);
  const Vec2 X1{static_cast<double>(k0) * top, top};
  const Vec2 X2{static_cast<double>(k0 + 1) * top, top};
  const Vec2 Y2{static_cast<double>(2 * k0 + 1) * bottom, bottom};
  const auto& strip = strips[static_cast<std::size_t>(n)];
  if (cross(Y2 - X1, p - X1) < 0.0) return strip[3 * k0];
  if (cross(Y2 - X2, p - X2) > 0.0) return strip[3 * k0 + 2];
  return strip[3 * k0 + 1];
}

const TriangleMap& ExtensionMesh::locate_image(Vec2 p) const {
  if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= pow2(-depth) && p.y <= 1.0))
    throw std::domain_error("locate_image: point outside the meshed region");
  const int n = strip_of_height(p.y, depth);
  const std::size_t quads = std::size_t{1} << n;
  const double top = pow2(-n), bottom = pow2(-n - 1);
  const double t = std::clamp((top - p.y) / (top - bottom), 0.0, 1.0);
  const auto& strip = strips[static_cast<std::size_t>(n)];

  // Left slanted edge of quad k at the query height; increasing in k.
  const auto left_edge_x = [&](std::size_t k) {
    const TriangleMap& t1 = strip[3 * k];
    const double xt = t1.image_vertices[0].x;  // X1' on the top edge
    const double xb = t1.image_vertices[1].x;  // Y1' on the bottom edge
    return xt + t * (xb - xt);
  };
  std::size_t lo = 0, hi = quads - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo + 1) / 2;
    if (left_edge_x(mid) <= p.x)
      lo = mid;
    else
      hi = mid - 1;
  }

  const TriangleMap& t1 = strip[3 * lo];
  const TriangleMap& t2 = strip[3 * lo + 1];
  const Vec2 pX1 = t1.image_vertices[0];
  const Vec2 pY2 = t1.image_vertices[2];
  const Vec2 pX2 = t2.image_vertices[2];
  if (cross(pY2 - pX1, p - pX1) < 0.0) return t1;
  if (cross(pY2 - pX2, p - pX2) > 0.0) return strip[3 * lo + 2];
  return t2;
}

Vec2 ExtensionMesh::evaluate(Vec2 p, Direction dir) const {
  if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0))
    throw std::domain_error("evaluate: point outside the unit square");
  const double floor_y = pow2(-depth);
  if (dir == Direction::forward) {
    if (p.y < floor_y) return {level_maps[static_cast<std::size_t>(depth)](p.x), p.y};
    return locate(p).apply(p);
  }
  if (p.y < floor_y) return {level_maps[static_cast<std::size_t>(depth)].inverse(p.x), p.y};
  return locate_image(p).apply_inverse(p);
}

EnergyReport orlicz_energy(const ExtensionMesh& mesh, const NFunction& nf, Direction dir,
                           int depth) {
  if (depth < 1 || depth > mesh.depth)
    throw config_error("orlicz_energy: depth exceeds mesh depth");

  EnergyReport rep;
  rep.direction = dir;
  rep.depth = depth;
  rep.strip_terms.resize(depth);
  rep.cumulative.resize(depth);
  rep.surrogate_terms.resize(depth);
  rep.min_jacobian.resize(depth);
  rep.max_group_excess.resize(depth);

  double ratio_max = 0.0;
  with_nfunction_kernel(nf, [&](auto phi) {
    for (int n = 0; n < depth; ++n) {
      const double height = pow2(-n);
      const double cell = pow2(-2 * n);
      KahanSum exact, surrogate;
      double min_jac = std::numeric_limits<double>::infinity();
      for (const TriangleMap& t : mesh.strips[static_cast<std::size_t>(n)]) {
        min_jac = std::min(min_jac, t.jacobian);
        const double base = t.image_base_length();
        double ex, su;
        if (dir == Direction::forward) {
          ex = phi(t.sigma1) * t.domain_area();
          su = (phi(base / height) + phi(1.0)) * cell;
        } else {
          ex = phi(1.0 / t.sigma2) * t.image_area();
          su = (phi(height / base) + phi(1.0)) * (base * height);
        }
        exact.add(ex);
        surrogate.add(su);
        if (ex > 0.0 && su > 0.0 && std::isfinite(ex) && std::isfinite(su))
          ratio_max = std::max(ratio_max, ex / su);
      }
      rep.strip_terms[static_cast<std::size_t>(n)] = exact.value();
      rep.surrogate_terms[static_cast<std::size_t>(n)] = surrogate.value();
      rep.min_jacobian[static_cast<std::size_t>(n)] = min_jac;
      rep.max_group_excess[static_cast<std::size_t>(n)] =
          std::max(mesh.partitions[static_cast<std::size_t>(n)].max_image_excess(),
                   mesh.partitions[static_cast<std::size_t>(n) + 1].max_image_excess());
    }
  });

  KahanSum running;
  for (int n = 0; n < depth; ++n) {
    running.add(rep.strip_terms[static_cast<std::size_t>(n)]);
    rep.cumulative[static_cast<std::size_t>(n)] = running.value();
  }
  rep.surrogate_ratio = ratio_max;
  rep.verdict = trend_verdict(rep.strip_terms, kTrendThreshold);
  return rep;
}

MeshAudit homeo_audit(const ExtensionMesh& mesh) {
  MeshAudit a;
  a.min_jacobian = std::numeric_limits<double>::infinity();

  for (const auto& strip : mesh.strips) {
    for (const TriangleMap& t : strip) {
      a.min_jacobian = std::min(a.min_jacobian, t.jacobian);
      for (int i = 0; i < 3; ++i) {
        const Vec2 mapped = t.apply(t.domain_vertices[static_cast<std::size_t>(i)]);
        const Vec2 want = t.image_vertices[static_cast<std::size_t>(i)];
        a.max_vertex_residual = std::max(
            a.max_vertex_residual, std::max(std::abs(mapped.x - want.x), std::abs(mapped.y - want.y)));
      }
      // Horizontal side midpoint must land on the incident level map.
      const bool top_side = t.corner == 2;
      const Vec2 va = top_side ? t.domain_vertices[0] : t.domain_vertices[1];
      const Vec2 vb = t.domain_vertices[2];
      const double midx = 0.5 * (va.x + vb.x);
      const Vec2 mapped = t.apply({midx, va.y});
      const std::size_t lvl = static_cast<std::size_t>(t.strip + (top_side ? 0 : 1));
      const double want_x = mesh.level_maps[lvl](midx);
      a.max_interface_mismatch = std::max(
          a.max_interface_mismatch, std::max(std::abs(mapped.x - want_x), std::abs(mapped.y - va.y)));
    }
  }

  const int depth = mesh.depth;
  a.boundary_gap.resize(depth + 1);
  a.max_group_image_length.resize(depth + 1);
  for (int n = 0; n <= depth; ++n) {
    const auto& lm = mesh.level_maps[static_cast<std::size_t>(n)];
    const std::size_t points = std::size_t{1} << n;
    const double scale = pow2(-n);
    double gap = 0.0;
    for (std::size_t k = 0; k <= points; ++k) {
      const double x = static_cast<double>(k) * scale;
      gap = std::max(gap, std::abs(lm(x) - mesh.boundary.forward(x)));
    }
    a.boundary_gap[static_cast<std::size_t>(n)] = gap;
    const auto& lens = mesh.partitions[static_cast<std::size_t>(n)].image_lengths;
    a.max_group_image_length[static_cast<std::size_t>(n)] =
        *std::max_element(lens.begin(), lens.end());
  }

  a.jacobians_positive = a.min_jacobian > 0.0;
  a.interfaces_match = a.max_interface_mismatch <= 1e-10;
  a.boundary_gap_bounded = true;
  for (int n = 0; n <= depth; ++n)
    if (a.boundary_gap[static_cast<std::size_t>(n)] >
        a.max_group_image_length[static_cast<std::size_t>(n)] + 1e-12)
      a.boundary_gap_bounded = false;
  a.boundary_gap_tail_monotone = true;
  for (int n = depth / 2; n < depth; ++n)
    if (a.boundary_gap[static_cast<std::size_t>(n) + 1] >
        a.boundary_gap[static_cast<std::size_t>(n)] + 1e-12)
      a.boundary_gap_tail_monotone = false;
  return a;
}

}  // namespace orlicz
