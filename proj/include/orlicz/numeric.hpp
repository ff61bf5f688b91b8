#ifndef ORLICZ_NUMERIC_HPP
#define ORLICZ_NUMERIC_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "orlicz/errors.hpp"

namespace orlicz {

// Neumaier-compensated accumulator.  All report sums in this library go
// through it so results are independent of term magnitude ordering quirks.
class KahanSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Log-spaced evaluation grid.  Growth estimators default to
// [1e-6, 1e8] with 10^4 points.
struct LogGrid {
  double lo = 1e-6;
  double hi = 1e8;
  int points = 10000;

  std::vector<double> materialize() const {
    if (!(lo > 0.0) || !(hi > lo) || points < 2)
      throw config_error("LogGrid: need 0 < lo < hi and at least 2 points");
    std::vector<double> t(static_cast<size_t>(points));
    const double ratio = std::log(hi / lo);
    for (int i = 0; i < points; ++i)
      t[static_cast<size_t>(i)] = lo * std::exp(ratio * i / (points - 1));
    t.front() = lo;
    t.back() = hi;
    return t;
  }

  double decades() const { return std::log10(hi / lo); }
};

enum class Trend { converging, diverging, inconclusive };

inline const char* to_string(Trend t) {
  switch (t) {
    case Trend::converging: return "converging";
    case Trend::diverging: return "diverging";
    default: return "inconclusive";
  }
}

// Classifies the tail behaviour of a nonnegative term sequence from the
// ratios of its last `window` consecutive pairs.  A pair below `floor` counts
// as fully decayed (ratio 0).  Non-finite terms in the window mean the sums
// blew up and force `diverging`.
//   - all ratios <  threshold -> converging
//   - all ratios >= threshold (terms above floor) -> diverging
//   - otherwise inconclusive
inline Trend trend_verdict(std::span<const double> terms, double threshold,
                           int window = 5, double floor = 1e-15) {
  const size_t n = terms.size();
  if (n < 2) return Trend::inconclusive;
  const size_t ratios = std::min<size_t>(static_cast<size_t>(window), n - 1);
  bool any_low = false, any_high = false;
  for (size_t i = n - ratios; i < n; ++i) {
    const double prev = terms[i - 1], cur = terms[i];
    if (!std::isfinite(prev) || !std::isfinite(cur)) return Trend::diverging;
    double r;
    if (cur <= floor) {
      r = 0.0;
    } else if (prev <= floor) {
      r = threshold + 1.0;
    } else {
      r = cur / prev;
    }
    (r < threshold ? any_low : any_high) = true;
  }
  if (any_low && any_high) return Trend::inconclusive;
  return any_high ? Trend::diverging : Trend::converging;
}

// 16-point Gauss-Legendre rule on [-1, 1]; positive half listed, mirrored in
// the loop.  Used by the fixed (non-adaptive) quadratures in reports.
namespace detail {
inline constexpr double kGL16Nodes[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
inline constexpr double kGL16Weights[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};
}  // namespace detail

template <class F>
double gauss_legendre_16(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  KahanSum s;
  for (int i = 0; i < 8; ++i) {
    const double x = half * detail::kGL16Nodes[i];
    s.add(detail::kGL16Weights[i] * (f(mid + x) + f(mid - x)));
  }
  return s.value() * half;
}

// Composite rule: `panels` equal subdivisions of [a, b].
template <class F>
double gauss_legendre_composite(F&& f, double a, double b, int panels) {
  KahanSum s;
  for (int i = 0; i < panels; ++i) {
    const double x0 = a + (b - a) * i / panels;
    const double x1 = a + (b - a) * (i + 1) / panels;
    s.add(gauss_legendre_16(f, x0, x1));
  }
  return s.value();
}

// Monotone-increasing scalar inverse by bisection on [lo, hi].
template <class F>
double bisect_increasing(F&& f, double target, double lo, double hi,
                         double tol = 1e-14, int max_iter = 200) {
  double flo = f(lo) - target, fhi = f(hi) - target;
  if (flo > 0.0 || fhi < 0.0)
    throw data_error("bisect_increasing: target outside bracket");
  for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid) - target;
    if (fm < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline double pow2(int n) { return std::ldexp(1.0, n); }

}  // namespace orlicz

#endif
