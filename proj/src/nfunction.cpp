#include "orlicz/nfunction.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

namespace orlicz {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string make_label(NFunctionFamily f, double p, double a) {
  switch (f) {
    case NFunctionFamily::power:
      return "t^" + format_double(p);
    case NFunctionFamily::power_log:
      if (a >= 0.0)
        return "t^" + format_double(p) + " log^" + format_double(a) + "(e+t)";
      return "t^" + format_double(p) + " / log^" + format_double(-a) + "(e+t)";
    case NFunctionFamily::exp_residual:
      return "e^t - t - 1";
  }
  return "?";
}

std::string sanitize(std::string s) {
  for (char& c : s) {
    if (c == '.') c = 'p';
    if (c == '-') c = 'm';
  }
  return s;
}

// Indices of grid entries that sit just below each power-of-ten boundary.
std::vector<size_t> decade_marks(const std::vector<double>& t) {
  std::vector<size_t> marks;
  int last = static_cast<int>(std::floor(std::log10(t.front()) + 1e-12));
  for (size_t i = 1; i < t.size(); ++i) {
    const int d = static_cast<int>(std::floor(std::log10(t[i]) + 1e-12));
    if (d > last) {
      marks.push_back(i - 1);
      last = d;
    }
  }
  marks.push_back(t.size() - 1);
  return marks;
}

}  // namespace

NFunction::NFunction(NFunctionFamily f, double p, double a)
    : family_(f), p_(p), a_(a), label_(make_label(f, p, a)) {}

std::string NFunction::slug() const {
  switch (family_) {
    case NFunctionFamily::power:
      return sanitize("power_" + format_double(p_));
    case NFunctionFamily::power_log:
      return sanitize("power_log_" + format_double(p_) + "_" + format_double(a_));
    case NFunctionFamily::exp_residual:
      return "exp_residual";
  }
  return "nfunction";
}

DoublingCheck check_doubling(const NFunction& nf, const LogGrid& grid) {
  if (grid.decades() < 8.0 || !(grid.lo < 1.0) || !(grid.hi > 1.0))
    throw config_error("check_doubling: grid must span at least 8 decades around 1");
  if (grid.points < 1000)
    throw config_error("check_doubling: grid must have at least 1000 points");

  const std::vector<double> ts = grid.materialize();
  DoublingCheck out;
  double max_ratio = 2.0;
  bool overflow = false;
  std::vector<double> ratios(ts.size(), 0.0);
  for (size_t i = 0; i < ts.size(); ++i) {
    const double lo = nf.eval_raw(ts[i]);
    const double hi = nf.eval_raw(2.0 * ts[i]);
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo <= 0.0) {
      overflow = true;
      ratios[i] = std::numeric_limits<double>::infinity();
      continue;
    }
    ratios[i] = hi / lo;
    max_ratio = std::max(max_ratio, ratios[i]);
  }
  out.constant = max_ratio;
  out.unbounded = overflow || max_ratio > 1e6;

  // Substantive growth detector: the per-decade maximum at least doubling
  // across each of the top three decades means the ratio is not settling.
  if (!out.unbounded) {
    const std::vector<size_t> marks = decade_marks(ts);
    if (marks.size() >= 4) {
      std::vector<double> decade_max;
      size_t start = 0;
      for (size_t m : marks) {
        double dm = 0.0;
        for (size_t i = start; i <= m; ++i) dm = std::max(dm, ratios[i]);
        decade_max.push_back(dm);
        start = m + 1;
      }
      const size_t n = decade_max.size();
      bool strong = true;
      for (size_t i = n - 3; i < n; ++i)
        strong = strong && decade_max[i] >= 2.0 * decade_max[i - 1];
      out.unbounded = strong;
    }
  }
  return out;
}

AincCheck check_ainc(const NFunction& nf, double p, double t0, const LogGrid& grid) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::domain_error("check_ainc: exponent must satisfy p > 1");
  if (!(t0 >= 0.0) || !std::isfinite(t0))
    throw std::domain_error("check_ainc: threshold must be finite and nonnegative");

  const double lo = std::max(t0, grid.lo);
  if (!(lo < grid.hi))
    throw config_error("check_ainc: grid does not reach above the threshold");
  const std::vector<double> ts = LogGrid{lo, grid.hi, grid.points}.materialize();

  AincCheck out;
  out.exponent = p;
  out.threshold = t0;

  double run_max = 0.0;
  double c_a = 1.0;
  std::vector<double> prefix_at_decade;
  const std::vector<size_t> marks = decade_marks(ts);
  size_t mark_pos = 0;
  for (size_t i = 0; i < ts.size(); ++i) {
    const double g = nf.eval_raw(ts[i]) / std::pow(ts[i], p);
    if (std::isfinite(g) && g > 0.0) {
      run_max = std::max(run_max, g);
      c_a = std::max(c_a, run_max / g);
    }
    while (mark_pos < marks.size() && marks[mark_pos] == i) {
      prefix_at_decade.push_back(c_a);
      ++mark_pos;
    }
  }
  out.constant = c_a;

  out.fails = c_a > 1e6;
  if (!out.fails && prefix_at_decade.size() >= 5) {
    // Estimate still climbing as the ceiling grows: check the last few
    // decade-prefix values for steady (>2%) multiplicative growth.
    const size_t n = prefix_at_decade.size();
    const size_t steps = std::min<size_t>(6, n - 1);
    bool growing = true;
    for (size_t i = n - steps; i < n; ++i)
      growing = growing && prefix_at_decade[i] > 1.02 * prefix_at_decade[i - 1];
    out.fails = growing;
  }
  return out;
}

double superadditivity_defect(const NFunction& nf, double a, double b) {
  return nf(a + b) - nf(a) - nf(b);
}

TailIntegral tail_integral(const NFunction& nf, double t_max, int octaves) {
  if (!(t_max >= 1024.0))
    throw config_error("tail_integral: t_max must be at least 2^10");
  if (octaves < 5)
    throw config_error("tail_integral: need at least 5 octaves");

  TailIntegral out;
  const int full = std::min(octaves, static_cast<int>(std::floor(std::log2(t_max) + 1e-9)));

  return with_nfunction_kernel(nf, [&](auto phi) {
    const auto integrand = [&phi](double t) { return phi(t) / (t * t * t); };
    KahanSum total;
    for (int o = 1; o <= full; ++o) {
      const double term =
          gauss_legendre_composite(integrand, pow2(o - 1), pow2(o), 4);
      out.octave_terms.push_back(term);
      total.add(term);
    }
    const double covered = pow2(full);
    if (t_max > covered)
      total.add(gauss_legendre_composite(integrand, covered, t_max, 8));
    out.value = total.value();
    out.verdict = trend_verdict(out.octave_terms, 0.95);

    KahanSum dsum;
    for (int n = 1; n <= full; ++n) {
      const double term = phi(pow2(n)) * pow2(-2 * n);
      out.discrete_terms.push_back(term);
      dsum.add(term);
    }
    out.discrete_value = dsum.value();
    out.discrete_verdict = trend_verdict(out.discrete_terms, 0.95);
    return out;
  });
}

double default_growth_exponent(const NFunction& nf) {
  switch (nf.family()) {
    case NFunctionFamily::power:
      return nf.param_p();
    case NFunctionFamily::power_log:
      if (nf.param_a() >= 0.0) return nf.param_p();
      return std::max(1.25, 0.5 * (1.0 + nf.param_p()));
    case NFunctionFamily::exp_residual:
      return 2.0;
  }
  return 2.0;
}

GrowthReport growth_report(const NFunction& nf, double ainc_p, double t0,
                           const LogGrid& grid, int tail_octaves) {
  GrowthReport r;
  const DoublingCheck d = check_doubling(nf, grid);
  r.doubling_constant = d.constant;
  r.doubling_ok = !d.unbounded;
  const AincCheck a = check_ainc(nf, ainc_p, t0, grid);
  r.ainc_constant = a.constant;
  r.ainc_exponent = a.exponent;
  r.ainc_threshold = a.threshold;
  r.ainc_ok = !a.fails;
  const TailIntegral t = tail_integral(nf, pow2(tail_octaves), tail_octaves);
  r.tail_value = t.value;
  r.tail_verdict = t.verdict;
  r.tail_discrete_value = t.discrete_value;
  r.tail_discrete_verdict = t.discrete_verdict;
  r.tail_octaves = tail_octaves;
  return r;
}

}  // namespace orlicz
