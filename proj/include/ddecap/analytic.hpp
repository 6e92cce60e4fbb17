#pragma once

#include <functional>
#include <string>

#include "ddecap/interval.hpp"

namespace ddecap {

// I_cg = int_1^2 e^{c s} g(e^{-c (s - 1)}) ds for g(x) = x^k.
Interval i_cg(const Interval& c, double k);

// Same integral for an interval-evaluable g, by an interval Riemann sum
// over `panels` equal panels.
Interval i_cg_quadrature(const Interval& c, const std::function<Interval(const Interval&)>& g, int panels = 1024);

struct AnalyticReport {
  bool certified = false;
  Interval integral;         // I_cg
  Interval growth_bound;     // (e^{2c} - 1) / I_cg
  Interval level_bound;      // c / g(e^{-c})
  Interval threshold;        // max of the two
  Interval growth_margin;    // d - growth_bound
  Interval level_margin;     // d - level_bound
};

// Sufficient condition for a slowly oscillating periodic orbit of the
// limiting equation: d > max{(e^{2c} - 1) / I_cg, c / g(e^{-c})}.
// Certified only if d.lo exceeds the upper bound of the threshold.
// Throws DomainError unless d.lo > c.hi > 0 and k > 0.
AnalyticReport check_P_sufficient(const Interval& c, const Interval& d, double k);

// Closed-form thresholds for k = 1, 2 and 1/2, and the general power
// form max{(e^c - e^{-c}) (k-1) c / (1 - e^{-(k-1) c}), c e^{k c}}.
Interval corollary_threshold(const Interval& c, double k);

std::string format_analytic(const AnalyticReport& r);

}  // namespace ddecap
