#ifndef ORLICZ_BOUNDARY_HPP
#define ORLICZ_BOUNDARY_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "orlicz/errors.hpp"

namespace orlicz {

// Circle homeomorphism in the flat model: a strictly increasing bijection
// u : [0,1] -> [0,1] with u(0) = 0 and u(1) = 1 (basepoint fixed, so
// rotations are quotiented out).  Closed-form families carry closed-form
// inverses; sampled maps invert by exact piecewise-linear interpolation;
// arbitrary callables fall back to bisection at 1e-14.
class BoundaryHomeo {
 public:
  static BoundaryHomeo identity();
  // x^alpha, alpha > 0.
  static BoundaryHomeo power(double alpha);
  // (1 - log x)^(-beta), beta > 0: all derivatives collapse at 0, image
  // lengths of [0, 2^-n] decay only polynomially in n.
  static BoundaryHomeo log_singular(double beta);
  // Strictly increasing PL map through `knots` points with pseudorandomly
  // drawn gaps; fully determined by the seed.
  static BoundaryHomeo random_piecewise_linear(std::uint64_t seed, int knots);
  // Self-similar staircase: `level` rounds of splitting every domain cell in
  // half while the image splits ratio : (1 - ratio).
  static BoundaryHomeo cantor_approximant(int level, double ratio = 0.3);
  static BoundaryHomeo piecewise_linear(std::vector<double> xs, std::vector<double> ys,
                                        std::string label = "piecewise_linear");
  static BoundaryHomeo from_function(std::string label, std::function<double(double)> fwd);
  // Two-column CSV (x, u(x)); a non-numeric first line is skipped as header.
  static BoundaryHomeo from_csv(const std::string& path);

  double forward(double x) const;
  double inverse(double y) const;
  double operator()(double x) const { return forward(x); }

  // The inverse homeomorphism as a first-class map (closed form or swapped
  // knots where available, bisection otherwise).
  BoundaryHomeo inverted() const;

  const std::string& label() const { return label_; }
  std::string slug() const;

  bool has_knots() const { return kind_ == Kind::pl; }
  const std::vector<double>& knot_xs() const { return xs_; }
  const std::vector<double>& knot_ys() const { return ys_; }

 private:
  enum class Kind { identity, power, log_sing, pl, custom };

  BoundaryHomeo() = default;

  static BoundaryHomeo make_pl(std::vector<double> xs, std::vector<double> ys,
                               std::string label);
  double eval_pl(double x, bool inverse) const;

  Kind kind_ = Kind::identity;
  double alpha_ = 1.0;  // power exponent or log-singular beta
  std::vector<double> xs_, ys_;
  std::function<double(double)> fwd_, inv_;  // custom kind; inv_ may be empty
  std::string label_ = "identity";
};

// lengths[n][k-1] = u(k 2^-n) - u((k-1) 2^-n) for n = 0..depth, k = 1..2^n.
// Every level is differenced from one shared array of evaluations at the
// finest dyadic points, so refinement consistency is exact by construction.
struct DyadicImageTable {
  int depth = 0;
  std::vector<std::vector<double>> lengths;

  double at(int n, int k) const { return lengths[static_cast<size_t>(n)][static_cast<size_t>(k - 1)]; }
  double level_sum(int n) const;

  // Builds a table from explicitly given finest-level lengths (test fixture
  // path); coarser levels are pairwise sums.
  static DyadicImageTable from_finest(std::vector<double> finest);
};

DyadicImageTable image_lengths(const BoundaryHomeo& bh, int depth, int max_depth = 20);

}  // namespace orlicz

#endif
