#ifndef ORLICZ_ANALYSIS_HPP
#define ORLICZ_ANALYSIS_HPP

#include <cstddef>
#include <vector>

#include "orlicz/boundary.hpp"
#include "orlicz/douglas.hpp"
#include "orlicz/extension.hpp"
#include "orlicz/geometry.hpp"
#include "orlicz/nfunction.hpp"

namespace orlicz {

// Cell-averaged scalar field on an m x m grid over the unit square.
// Row-major: values[i*m + j] is the cell [j/m, (j+1)/m] x [i/m, (i+1)/m].
struct GridField {
  std::size_t resolution = 0;
  std::vector<double> values;
  std::vector<char> mask;  // 1 = cell belongs to the domain

  double cell_area() const {
    return 1.0 / (static_cast<double>(resolution) * static_cast<double>(resolution));
  }
  double at(std::size_t row, std::size_t col) const { return values[row * resolution + col]; }
};

// Area-weighted average of the operator norm of the differential per cell,
// including the closed-form contribution of the region below the mesh's
// finest strip.
GridField sample_differential_field(const ExtensionMesh& mesh, std::size_t resolution);

// Centered Hardy-Littlewood maximal transform over squares of dyadic cell
// radii; windows are clipped at the domain edge and averaged over the cells
// actually present.  Pointwise >= the input field.
GridField maximal_transform(const GridField& field);

struct MaximalBound {
  double lhs = 0.0;    // integral of Phi(Mf)
  double rhs = 0.0;    // integral of Phi(f) + |domain| * Phi(t0)
  double ratio = 0.0;  // empirical maximal-inequality constant
};

MaximalBound maximal_inequality_test(const GridField& field, const NFunction& nf, double p,
                                     double t0);

struct WindowProbe {
  double lhs = 0.0;  // 2^-n * image length of the dyadic interval
  double rhs = 0.0;  // integral of sigma1 over the clipped window
  Rect window;
  double slack() const { return lhs > 0.0 ? rhs / lhs : 0.0; }
};

// Lower bound for one dyadic interval against the differential integral over
// the dilated square window sitting on that interval (dilation factor c
// about the square's center).
WindowProbe onlyif_probe(const ExtensionMesh& mesh, const DyadicImageTable& table, int n,
                         std::size_t k, double c = 3.0);

// Per-level check that superadditivity collapses the dyadic sum:
// sum_k Phi(len * 2^n) * 2^-2n  vs  Phi(2^n) * 2^-2n.
struct DominationRow {
  double lhs = 0.0;
  double rhs = 0.0;
};

DominationRow level_domination(const DyadicImageTable& table, const NFunction& nf, int level);

struct PoissonQuadrature {
  std::size_t nodes = 4096;
};

// Harmonic extension of the induced circle map at polar point (r, theta),
// via midpoint quadrature of the Poisson kernel.  rotation adds a constant
// angular offset (in turns) to the boundary values.
Vec2 poisson_extension(const BoundaryHomeo& bh, double r, double theta,
                       PoissonQuadrature quad = {}, double rotation = 0.0);

struct ExperimentVerdict {
  Trend douglas_fwd = Trend::inconclusive;
  Trend douglas_inv = Trend::inconclusive;
  Trend energy_fwd = Trend::inconclusive;
  Trend energy_inv = Trend::inconclusive;
  bool inconclusive = true;
  bool consistent = false;  // defined only when inconclusive is false
  // Empirical coupling constants: worst cumulative energy over the matching
  // Douglas cumulative plus the Phi(1) cap, per direction.
  double coupling_fwd = 0.0;
  double coupling_inv = 0.0;
  AincCheck ainc_fwd;
  AincCheck ainc_inv;
};

ExperimentVerdict theorem_experiment(const BoundaryHomeo& bh, const NFunction& nf_fwd,
                                     const NFunction& nf_inv, int depth);

struct CorollaryReport {
  double tail_value = 0.0;
  Trend tail_verdict = Trend::inconclusive;
  Trend douglas_fwd = Trend::inconclusive;
  Trend douglas_inv = Trend::inconclusive;
  Trend energy_fwd = Trend::inconclusive;
  Trend energy_inv = Trend::inconclusive;
  bool pass = false;
};

CorollaryReport corollary_experiment(const BoundaryHomeo& bh, const NFunction& nf, int depth);

}  // namespace orlicz

#endif
