#ifndef ORLICZ_EXTENSION_HPP
#define ORLICZ_EXTENSION_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "orlicz/boundary.hpp"
#include "orlicz/geometry.hpp"
#include "orlicz/nfunction.hpp"
#include "orlicz/numeric.hpp"

namespace orlicz {

// Greedy grouping of the level-n dyadic intervals: a group closes at the
// first index where its cumulative image length reaches 2^-n.  A trailing
// remainder below the threshold merges into the last complete group.
struct MergedPartition {
  int level = 0;
  std::vector<std::size_t> group_bounds;  // k_0 = 0 < ... < k_J = 2^level
  std::vector<double> domain_lengths;     // (k_j - k_{j-1}) * 2^-level
  std::vector<double> image_lengths;
  std::vector<double> image_breaks;       // prefix sums, 0 = b_0 < ... < b_J = 1
  std::vector<char> short_domain;         // domain length < 2^-level / 2
  std::vector<char> oversized_image;      // image length >= 2^-(level-1)
  bool remainder_merged = false;

  std::size_t group_count() const { return image_lengths.size(); }
  // Amount by which the worst group image exceeds the 2^-(level-1) bound,
  // in units of 2^-level (0 when every group respects the bound).
  double max_image_excess() const;
};

MergedPartition merge_level(const DyadicImageTable& table, int level);

// Piecewise-linear increasing bijection of [0,1] mapping each domain group
// onto its image group.
struct LevelMap {
  int level = 0;
  std::vector<double> domain_breaks;
  std::vector<double> image_breaks;
  std::vector<double> slopes;

  double operator()(double x) const;
  double inverse(double y) const;
};

LevelMap build_level_map(const MergedPartition& partition);

enum class Direction { forward, inverse };

// Affine map on one triangle of a strip.  corner follows the construction
// order of the quadrilateral split: 1 = (X1,Y1,Y2), 2 = (X1,Y2,X2),
// 3 = (X2,Y2,Y3), with X on the strip's top edge and Y on its bottom edge.
struct TriangleMap {
  int strip = 0;
  int quad = 1;  // 1-based index of the level-n dyadic interval
  int corner = 1;
  std::array<Vec2, 3> domain_vertices{};
  std::array<Vec2, 3> image_vertices{};
  Mat2 linear;
  Vec2 offset;
  double sigma1 = 1.0;
  double sigma2 = 1.0;
  double jacobian = 1.0;

  Vec2 apply(Vec2 p) const { return linear.apply(p) + offset; }
  Vec2 apply_inverse(Vec2 p) const;
  double domain_area() const;
  double image_area() const;
  // Length of the horizontal side of the image triangle (the image of the
  // triangle's base interval under the incident level map).
  double image_base_length() const;
};

// Triangles of the strip between heights 2^-n (trace = upper) and
// 2^-(n+1) (trace = lower), in quad order, three per quad.
std::vector<TriangleMap> triangulate_strip(const LevelMap& upper, const LevelMap& lower);

struct Differential {
  double operator_norm = 1.0;   // sigma1
  double inverse_norm = 1.0;    // 1 / sigma2
  double jacobian = 1.0;
};

Differential differential(const TriangleMap& tm);

struct ExtensionMesh {
  int depth = 0;
  BoundaryHomeo boundary;
  DyadicImageTable table;
  std::vector<MergedPartition> partitions;       // levels 0..depth
  std::vector<LevelMap> level_maps;              // levels 0..depth
  std::vector<std::vector<TriangleMap>> strips;  // strips 0..depth-1

  std::size_t triangle_count() const;
  // Containing triangle of a point with y in [2^-depth, 1]; ties on shared
  // edges resolve to the middle triangle, whose map agrees there.
  const TriangleMap& locate(Vec2 p) const;
  const TriangleMap& locate_image(Vec2 p) const;
  Vec2 evaluate(Vec2 p, Direction dir = Direction::forward) const;
};

ExtensionMesh build_extension_mesh(const BoundaryHomeo& bh, int depth, int max_depth = 20);

struct EnergyReport {
  Direction direction = Direction::forward;
  int depth = 0;
  std::vector<double> strip_terms;      // strips 0..depth-1
  std::vector<double> cumulative;
  Trend verdict = Trend::inconclusive;
  // Per-triangle upper-bound surrogates summed per strip, and the worst
  // exact/surrogate ratio seen across all triangles.
  std::vector<double> surrogate_terms;
  double surrogate_ratio = 0.0;
  std::vector<double> min_jacobian;
  std::vector<double> max_group_excess;

  double total() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
};

EnergyReport orlicz_energy(const ExtensionMesh& mesh, const NFunction& nf, Direction dir,
                           int depth);

struct MeshAudit {
  double min_jacobian = 0.0;
  double max_interface_mismatch = 0.0;
  double max_vertex_residual = 0.0;
  std::vector<double> boundary_gap;            // per level 0..depth
  std::vector<double> max_group_image_length;  // per level 0..depth
  bool jacobians_positive = false;
  bool interfaces_match = false;     // mismatch <= 1e-10
  bool boundary_gap_bounded = false; // gap[n] <= max group image length at n
  // Nonincreasing gap over the upper half of the levels.  Coarse levels can
  // legitimately increase: level 0 is pinned to the identity, so merging at
  // level 1 may open a gap from zero.
  bool boundary_gap_tail_monotone = false;

  bool pass() const { return jacobians_positive && interfaces_match && boundary_gap_bounded; }
};

MeshAudit homeo_audit(const ExtensionMesh& mesh);

}  // namespace orlicz

#endif
