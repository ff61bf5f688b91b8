#ifndef ORLICZ_NFUNCTION_HPP
#define ORLICZ_NFUNCTION_HPP

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "orlicz/errors.hpp"
#include "orlicz/numeric.hpp"

namespace orlicz {

// Young functions Phi(t) = integral of an increasing density phi over [0,t].
// Three closed-form families cover the library's needs:
//   power        t^p                      (p > 1)
//   power_log    t^p * log^a(e + t)       (p > 1, a real; a < 0 admissible)
//   exp_residual e^t - t - 1              (fails every doubling estimate;
//                                          kept as the negative control)
enum class NFunctionFamily { power, power_log, exp_residual };

class NFunction {
 public:
  static NFunction power(double p) {
    require_exponent(p);
    return NFunction(NFunctionFamily::power, p, 0.0);
  }
  static NFunction power_log(double p, double a) {
    require_exponent(p);
    if (!std::isfinite(a)) throw config_error("NFunction: log exponent must be finite");
    return NFunction(NFunctionFamily::power_log, p, a);
  }
  static NFunction exp_residual() {
    return NFunction(NFunctionFamily::exp_residual, 0.0, 0.0);
  }

  double operator()(double t) const {
    check_arg(t);
    return eval_raw(t);
  }

  // Right-continuous increasing density; operator() integrates it.
  double density(double t) const {
    check_arg(t);
    switch (family_) {
      case NFunctionFamily::power:
        return p_ * std::pow(t, p_ - 1.0);
      case NFunctionFamily::power_log: {
        if (t == 0.0) return 0.0;
        const double L = std::log(std::numbers::e + t);
        return std::pow(t, p_ - 1.0) * std::pow(L, a_ - 1.0) *
               (p_ * L + a_ * t / (std::numbers::e + t));
      }
      case NFunctionFamily::exp_residual:
        return std::expm1(t);
    }
    return 0.0;
  }

  NFunctionFamily family() const { return family_; }
  double param_p() const { return p_; }
  double param_a() const { return a_; }
  const std::string& label() const { return label_; }
  std::string slug() const;

  // Unchecked evaluation for inner quadrature loops; t must be >= 0.
  double eval_raw(double t) const {
    switch (family_) {
      case NFunctionFamily::power:
        if (p_ == 2.0) return t * t;
        if (p_ == 3.0) return t * t * t;
        return std::pow(t, p_);
      case NFunctionFamily::power_log: {
        const double L = std::log(std::numbers::e + t);
        if (p_ == 2.0 && a_ == 1.0) return t * t * L;
        if (p_ == 2.0 && a_ == -2.0) return t * t / (L * L);
        return std::pow(t, p_) * std::pow(L, a_);
      }
      case NFunctionFamily::exp_residual:
        return std::expm1(t) - t;
    }
    return 0.0;
  }

 private:
  NFunction(NFunctionFamily f, double p, double a);

  static void require_exponent(double p) {
    if (!(p > 1.0) || !std::isfinite(p))
      throw config_error("NFunction: power exponent must satisfy p > 1");
  }
  static void check_arg(double t) {
    if (!(t >= 0.0) || !std::isfinite(t))
      throw std::domain_error("NFunction: argument must be finite and nonnegative");
  }

  NFunctionFamily family_;
  double p_, a_;
  std::string label_;
};

// Calls fn with an inlineable Phi functor matching nf; hot kernels use this
// to avoid per-evaluation dispatch.
template <class Fn>
decltype(auto) with_nfunction_kernel(const NFunction& nf, Fn&& fn) {
  switch (nf.family()) {
    case NFunctionFamily::power: {
      const double p = nf.param_p();
      if (p == 2.0) return fn([](double t) { return t * t; });
      if (p == 3.0) return fn([](double t) { return t * t * t; });
      return fn([p](double t) { return std::pow(t, p); });
    }
    case NFunctionFamily::power_log: {
      const double p = nf.param_p(), a = nf.param_a();
      if (p == 2.0 && a == 1.0)
        return fn([](double t) { return t * t * std::log(std::numbers::e + t); });
      if (p == 2.0 && a == -2.0)
        return fn([](double t) {
          const double L = std::log(std::numbers::e + t);
          return t * t / (L * L);
        });
      return fn([p, a](double t) {
        return std::pow(t, p) * std::pow(std::log(std::numbers::e + t), a);
      });
    }
    case NFunctionFamily::exp_residual:
    default:
      return fn([](double t) { return std::expm1(t) - t; });
  }
}

// sup over the grid of Phi(2t)/Phi(t), clamped below by 2.  `unbounded` is a
// heuristic flag: the ratio overflowed, exceeded 1e6, or at least doubled
// across each of the top three decades.
struct DoublingCheck {
  double constant = 2.0;
  bool unbounded = false;
};

// sup over grid pairs s <= t (both >= max(t0, grid lo)) of
// (Phi(s)/s^p) / (Phi(t)/t^p), via a running max of g(s) = Phi(s)/s^p.
// `fails` is set when the sup keeps growing with the grid ceiling.
struct AincCheck {
  double constant = 1.0;
  double exponent = 0.0;
  double threshold = 0.0;
  bool fails = false;
};

DoublingCheck check_doubling(const NFunction& nf, const LogGrid& grid = {});
AincCheck check_ainc(const NFunction& nf, double p, double t0 = 0.0,
                     const LogGrid& grid = {});

// Phi(a+b) - Phi(a) - Phi(b); nonnegative for every Young function
// (superadditivity), up to roundoff.
double superadditivity_defect(const NFunction& nf, double a, double b);

// Integral of Phi(t)/t^3 over [1, t_max], split into per-octave pieces, plus
// the dyadic-sum counterpart sum_n Phi(2^n) 2^{-2n}.  A trend verdict is
// attached to each: ratios of consecutive octave terms below 0.95 over the
// last five octaves mean `converging`.
struct TailIntegral {
  double value = 0.0;
  std::vector<double> octave_terms;
  Trend verdict = Trend::inconclusive;
  double discrete_value = 0.0;
  std::vector<double> discrete_terms;
  Trend discrete_verdict = Trend::inconclusive;
};

TailIntegral tail_integral(const NFunction& nf, double t_max = pow2(30),
                           int octaves = 30);

struct GrowthReport {
  double doubling_constant = 2.0;
  bool doubling_ok = false;
  double ainc_constant = 1.0;
  double ainc_exponent = 0.0;
  double ainc_threshold = 0.0;
  bool ainc_ok = false;
  double tail_value = 0.0;
  Trend tail_verdict = Trend::inconclusive;
  double tail_discrete_value = 0.0;
  Trend tail_discrete_verdict = Trend::inconclusive;
  int tail_octaves = 0;
};

// Exponent used when callers do not pin one: the family's natural p, nudged
// down for negative log corrections (Phi/t^p must stay essentially rising).
double default_growth_exponent(const NFunction& nf);

GrowthReport growth_report(const NFunction& nf, double ainc_p, double t0 = 0.0,
                           const LogGrid& grid = {}, int tail_octaves = 30);

}  // namespace orlicz

#endif
