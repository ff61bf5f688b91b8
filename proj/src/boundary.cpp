#include "orlicz/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "orlicz/numeric.hpp"

namespace orlicz {

namespace {

void check_unit_arg(double x, const char* who) {
  if (!(x >= 0.0) || !(x <= 1.0))
    throw std::domain_error(std::string(who) + ": argument outside [0,1]");
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string sanitize(std::string s) {
  for (char& c : s) {
    if (c == '.') c = 'p';
    if (c == ' ' || c == '/' || c == '^' || c == '(' || c == ')') c = '_';
  }
  return s;
}

// 53-bit uniform in [0,1) straight from the engine, so draws do not depend
// on the standard library's distribution implementation.
double uniform53(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

BoundaryHomeo BoundaryHomeo::identity() { return BoundaryHomeo(); }

BoundaryHomeo BoundaryHomeo::power(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw config_error("BoundaryHomeo::power: exponent must be positive");
  if (alpha == 1.0) return identity();
  BoundaryHomeo b;
  b.kind_ = Kind::power;
  b.alpha_ = alpha;
  b.label_ = "power_" + format_double(alpha);
  return b;
}

BoundaryHomeo BoundaryHomeo::log_singular(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw config_error("BoundaryHomeo::log_singular: beta must be positive");
  BoundaryHomeo b;
  b.kind_ = Kind::log_sing;
  b.alpha_ = beta;
  b.label_ = "log_singular_" + format_double(beta);
  return b;
}

BoundaryHomeo BoundaryHomeo::random_piecewise_linear(std::uint64_t seed, int knots) {
  if (knots < 2)
    throw config_error("BoundaryHomeo::random_piecewise_linear: need at least 2 knots");
  if (knots > 100000)
    throw config_error("BoundaryHomeo::random_piecewise_linear: too many knots");
  std::mt19937_64 rng(seed);
  const size_t gaps = static_cast<size_t>(knots) - 1;
  std::vector<double> gx(gaps), gy(gaps);
  for (size_t i = 0; i < gaps; ++i) gx[i] = 0.1 + uniform53(rng);
  for (size_t i = 0; i < gaps; ++i) gy[i] = 0.1 + uniform53(rng);
  std::vector<double> xs(gaps + 1, 0.0), ys(gaps + 1, 0.0);
  double sx = 0.0, sy = 0.0;
  for (size_t i = 0; i < gaps; ++i) {
    sx += gx[i];
    xs[i + 1] = sx;
    sy += gy[i];
    ys[i + 1] = sy;
  }
  for (size_t i = 1; i < gaps; ++i) {
    xs[i] /= sx;
    ys[i] /= sy;
  }
  xs.back() = 1.0;
  ys.back() = 1.0;
  return make_pl(std::move(xs), std::move(ys),
                 "random_pl_s" + std::to_string(seed) + "_k" + std::to_string(knots));
}

BoundaryHomeo BoundaryHomeo::cantor_approximant(int level, double ratio) {
  if (level < 1 || level > 20)
    throw config_error("BoundaryHomeo::cantor_approximant: level must be in [1,20]");
  if (!(ratio > 0.0) || !(ratio < 1.0))
    throw config_error("BoundaryHomeo::cantor_approximant: ratio must lie in (0,1)");
  if (std::pow(std::min(ratio, 1.0 - ratio), level) < 1e-13)
    throw config_error(
        "BoundaryHomeo::cantor_approximant: cells collapse below double resolution");
  const size_t cells = static_cast<size_t>(1) << level;
  std::vector<double> xs(cells + 1), ys(cells + 1, 0.0);
  for (size_t k = 0; k <= cells; ++k)
    xs[k] = static_cast<double>(k) * pow2(-level);
  ys[cells] = 1.0;
  for (int lev = 0; lev < level; ++lev) {
    const size_t step = cells >> lev;
    for (size_t i = 0; i + step <= cells; i += step) {
      const size_t mid = i + step / 2;
      ys[mid] = ys[i] + ratio * (ys[i + step] - ys[i]);
    }
  }
  return make_pl(std::move(xs), std::move(ys),
                 "cantor_l" + std::to_string(level) + "_r" + format_double(ratio));
}

BoundaryHomeo BoundaryHomeo::piecewise_linear(std::vector<double> xs, std::vector<double> ys,
                                              std::string label) {
  return make_pl(std::move(xs), std::move(ys), std::move(label));
}

BoundaryHomeo BoundaryHomeo::make_pl(std::vector<double> xs, std::vector<double> ys,
                                     std::string label) {
  if (xs.size() < 2 || xs.size() != ys.size())
    throw config_error("BoundaryHomeo: need matching knot lists with at least 2 entries");
  if (std::abs(xs.front()) > 1e-12 || std::abs(xs.back() - 1.0) > 1e-12 ||
      std::abs(ys.front()) > 1e-12 || std::abs(ys.back() - 1.0) > 1e-12)
    throw config_error("BoundaryHomeo: knots must run from (0,0) to (1,1)");
  xs.front() = 0.0;
  xs.back() = 1.0;
  ys.front() = 0.0;
  ys.back() = 1.0;
  for (size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] - xs[i - 1] > 1e-9))
      throw data_error("BoundaryHomeo: knot abscissae not strictly increasing at index " +
                       std::to_string(i));
    if (!(ys[i] - ys[i - 1] > 1e-13))
      throw data_error("BoundaryHomeo: knot values not strictly increasing at index " +
                       std::to_string(i));
  }
  BoundaryHomeo b;
  b.kind_ = Kind::pl;
  b.xs_ = std::move(xs);
  b.ys_ = std::move(ys);
  b.label_ = std::move(label);
  return b;
}

BoundaryHomeo BoundaryHomeo::from_function(std::string label,
                                           std::function<double(double)> fwd) {
  if (!fwd) throw config_error("BoundaryHomeo::from_function: empty callable");
  if (std::abs(fwd(0.0)) > 1e-12 || std::abs(fwd(1.0) - 1.0) > 1e-12)
    throw config_error("BoundaryHomeo::from_function: endpoints must map to 0 and 1");
  double prev = 0.0;
  for (int i = 1; i <= 1024; ++i) {
    const double v = fwd(i / 1024.0);
    if (!(v > prev))
      throw data_error("BoundaryHomeo::from_function: map not strictly increasing near x=" +
                       format_double(i / 1024.0));
    prev = v;
  }
  BoundaryHomeo b;
  b.kind_ = Kind::custom;
  b.fwd_ = std::move(fwd);
  b.label_ = std::move(label);
  return b;
}

BoundaryHomeo BoundaryHomeo::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("BoundaryHomeo::from_csv: cannot open " + path);
  std::vector<double> xs, ys;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double x, y;
    if (!(row >> x >> y)) {
      if (lineno == 1) continue;  // header
      throw data_error("BoundaryHomeo::from_csv: malformed line " + std::to_string(lineno));
    }
    xs.push_back(x);
    ys.push_back(y);
  }
  return make_pl(std::move(xs), std::move(ys), "csv");
}

double BoundaryHomeo::eval_pl(double x, bool inverse) const {
  const std::vector<double>& from = inverse ? ys_ : xs_;
  const std::vector<double>& to = inverse ? xs_ : ys_;
  const auto it = std::upper_bound(from.begin(), from.end(), x);
  size_t hi = static_cast<size_t>(it - from.begin());
  if (hi == from.size()) return to.back();
  if (hi == 0) return to.front();
  const size_t lo = hi - 1;
  if (x == from[lo]) return to[lo];
  const double t = (x - from[lo]) / (from[hi] - from[lo]);
  const double y = to[lo] + t * (to[hi] - to[lo]);
  return std::clamp(y, to[lo], to[hi]);
}

double BoundaryHomeo::forward(double x) const {
  check_unit_arg(x, "BoundaryHomeo::forward");
  switch (kind_) {
    case Kind::identity:
      return x;
    case Kind::power:
      return std::pow(x, alpha_);
    case Kind::log_sing:
      if (x == 0.0) return 0.0;
      return std::pow(1.0 - std::log(x), -alpha_);
    case Kind::pl:
      return eval_pl(x, false);
    case Kind::custom:
      if (x == 0.0) return 0.0;
      if (x == 1.0) return 1.0;
      return fwd_(x);
  }
  return x;
}

double BoundaryHomeo::inverse(double y) const {
  check_unit_arg(y, "BoundaryHomeo::inverse");
  switch (kind_) {
    case Kind::identity:
      return y;
    case Kind::power:
      return std::pow(y, 1.0 / alpha_);
    case Kind::log_sing:
      if (y == 0.0) return 0.0;
      return std::exp(1.0 - std::pow(y, -1.0 / alpha_));
    case Kind::pl:
      return eval_pl(y, true);
    case Kind::custom:
      if (y == 0.0) return 0.0;
      if (y == 1.0) return 1.0;
      if (inv_) return inv_(y);
      return bisect_increasing(fwd_, y, 0.0, 1.0);
  }
  return y;
}

BoundaryHomeo BoundaryHomeo::inverted() const {
  BoundaryHomeo b;
  b.label_ = label_ + "_inv";
  switch (kind_) {
    case Kind::identity:
      return identity();
    case Kind::power:
      b = power(1.0 / alpha_);
      return b;
    case Kind::log_sing: {
      const double beta = alpha_;
      b.kind_ = Kind::custom;
      b.label_ = label_ + "_inv";
      b.fwd_ = [beta](double y) {
        return y == 0.0 ? 0.0 : std::exp(1.0 - std::pow(y, -1.0 / beta));
      };
      b.inv_ = [beta](double x) {
        return x == 0.0 ? 0.0 : std::pow(1.0 - std::log(x), -beta);
      };
      return b;
    }
    case Kind::pl:
      b.kind_ = Kind::pl;
      b.xs_ = ys_;
      b.ys_ = xs_;
      return b;
    case Kind::custom:
      b.kind_ = Kind::custom;
      if (inv_) {
        b.fwd_ = inv_;
        b.inv_ = fwd_;
      } else {
        const std::function<double(double)> f = fwd_;
        b.fwd_ = [f](double y) { return bisect_increasing(f, y, 0.0, 1.0); };
        b.inv_ = f;
      }
      return b;
  }
  return b;
}

std::string BoundaryHomeo::slug() const { return sanitize(label_); }

double DyadicImageTable::level_sum(int n) const {
  KahanSum s;
  for (double v : lengths[static_cast<size_t>(n)]) s.add(v);
  return s.value();
}

DyadicImageTable DyadicImageTable::from_finest(std::vector<double> finest) {
  if (finest.empty() || (finest.size() & (finest.size() - 1)) != 0)
    throw config_error("DyadicImageTable::from_finest: size must be a power of two");
  for (size_t i = 0; i < finest.size(); ++i)
    if (!(finest[i] > 0.0))
      throw data_error("DyadicImageTable::from_finest: nonpositive length at index " +
                       std::to_string(i));
  int depth = 0;
  while ((static_cast<size_t>(1) << depth) < finest.size()) ++depth;
  DyadicImageTable t;
  t.depth = depth;
  t.lengths.assign(static_cast<size_t>(depth) + 1, {});
  t.lengths[static_cast<size_t>(depth)] = std::move(finest);
  for (int n = depth - 1; n >= 0; --n) {
    const auto& fine = t.lengths[static_cast<size_t>(n) + 1];
    auto& coarse = t.lengths[static_cast<size_t>(n)];
    coarse.resize(fine.size() / 2);
    for (size_t k = 0; k < coarse.size(); ++k)
      coarse[k] = fine[2 * k] + fine[2 * k + 1];
  }
  return t;
}

DyadicImageTable image_lengths(const BoundaryHomeo& bh, int depth, int max_depth) {
  if (depth < 0) throw config_error("image_lengths: depth must be nonnegative");
  if (depth > max_depth)
    throw config_error("image_lengths: depth " + std::to_string(depth) +
                       " exceeds configured max " + std::to_string(max_depth));
  const size_t fine = static_cast<size_t>(1) << depth;
  std::vector<double> u(fine + 1);
  for (size_t k = 0; k <= fine; ++k)
    u[k] = bh.forward(static_cast<double>(k) * pow2(-depth));
  DyadicImageTable t;
  t.depth = depth;
  t.lengths.resize(static_cast<size_t>(depth) + 1);
  for (int n = 0; n <= depth; ++n) {
    const size_t count = static_cast<size_t>(1) << n;
    const size_t stride = fine >> n;
    auto& row = t.lengths[static_cast<size_t>(n)];
    row.resize(count);
    for (size_t k = 0; k < count; ++k) {
      row[k] = u[(k + 1) * stride] - u[k * stride];
      if (!(row[k] > 0.0))
        throw data_error("image_lengths: monotonicity violation at level " +
                         std::to_string(n) + ", interval " + std::to_string(k + 1));
    }
  }
  return t;
}

}  // namespace orlicz
