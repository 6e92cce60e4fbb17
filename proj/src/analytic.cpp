#include "ddecap/analytic.hpp"

#include <sstream>

#include "ddecap/errors.hpp"

namespace ddecap {

namespace {

void require_c(const Interval& c, double k) {
  if (!(c.lo() > 0.0)) throw DomainError("c must be positive");
  if (!(k > 0.0)) throw DomainError("k must be positive");
}

}  // namespace

Interval i_cg(const Interval& c, double k) {
  require_c(c, k);
  if (k == 1.0) return exp(c);
  const Interval a = Interval(k) - Interval(1.0);
  // (1 - e^{-a c}) / (a c) is positive for either sign of a.
  return exp(c) * (-expm1(-a * c)) / (a * c);
}

Interval i_cg_quadrature(const Interval& c, const std::function<Interval(const Interval&)>& g, int panels) {
  if (!(c.lo() > 0.0)) throw DomainError("c must be positive");
  if (panels < 1) throw DomainError("need at least one panel");
  const Interval w = Interval(1.0) / Interval(static_cast<double>(panels));
  Interval sum(0.0);
  for (int i = 0; i < panels; ++i) {
    // Panel [1 + i w, 1 + (i+1) w], enclosed outward.
    Interval s = hull(Interval(1.0) + Interval(static_cast<double>(i)) * w,
                      Interval(1.0) + Interval(static_cast<double>(i + 1)) * w);
    Interval f = exp(c * s) * g(exp(-c * (s - Interval(1.0))));
    sum = sum + f;
  }
  return sum * w;
}

AnalyticReport check_P_sufficient(const Interval& c, const Interval& d, double k) {
  require_c(c, k);
  if (!(d.lo() > c.hi())) throw DomainError("d must exceed c");
  AnalyticReport r;
  r.integral = i_cg(c, k);
  r.growth_bound = expm1(Interval(2.0) * c) / r.integral;
  // g(e^{-c}) = e^{-k c}.
  r.level_bound = c * exp(Interval(k) * c);
  r.threshold = max(r.growth_bound, r.level_bound);
  r.growth_margin = d - r.growth_bound;
  r.level_margin = d - r.level_bound;
  r.certified = d.lo() > r.threshold.hi();
  return r;
}

Interval corollary_threshold(const Interval& c, double k) {
  require_c(c, k);
  const Interval one(1.0);
  const Interval level = c * exp(Interval(k) * c);
  Interval growth;
  if (k == 1.0) {
    growth = exp(c) - exp(-c);
  } else if (k == 2.0) {
    growth = c * (exp(c) + one);
  } else if (k == 0.5) {
    growth = c / Interval(2.0) * (one + exp(-c)) * (one + exp(c / Interval(2.0)));
  } else {
    const Interval a = Interval(k) - one;
    growth = (exp(c) - exp(-c)) * a * c / (-expm1(-a * c));
  }
  return max(growth, level);
}

std::string format_analytic(const AnalyticReport& r) {
  std::ostringstream os;
  os << "I_cg        " << to_decimal_pair(r.integral) << "\n";
  os << "growth      " << to_decimal_pair(r.growth_bound) << "  margin " << to_decimal_pair(r.growth_margin) << "\n";
  os << "level       " << to_decimal_pair(r.level_bound) << "  margin " << to_decimal_pair(r.level_margin) << "\n";
  os << "threshold   " << to_decimal_pair(r.threshold) << "\n";
  os << (r.certified ? "Certified" : "NotImplied") << "\n";
  return os.str();
}

}  // namespace ddecap
