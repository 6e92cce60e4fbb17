#pragma once

#include <vector>

#include "ddecap/interval.hpp"

namespace ddecap {

// Which right-hand side drives a solution piece: pure decay x' = -c x while
// the delayed value is above 1, or x' = -c x + d g(x(t-1)) otherwise.
enum class Field { Decay, Smooth };

// Normalized Taylor coefficients: c[i] encloses phi^(i)(t) / i!.
struct Jet {
  std::vector<Interval> c;

  Jet() = default;
  explicit Jet(std::vector<Interval> coeffs) : c(std::move(coeffs)) {}
  static Jet zeros(int order) { return Jet(std::vector<Interval>(static_cast<size_t>(order + 1))); }

  int order() const { return static_cast<int>(c.size()) - 1; }
  Interval& operator[](size_t i) { return c[i]; }
  const Interval& operator[](size_t i) const { return c[i]; }
};

// Jet at a base point plus an enclosure of phi^[n+1] over [0, validity]:
//   phi(s) in sum_i c_i s^i + remainder * s^(n+1)   for s in [0, validity].
struct ForwardTaylorRep {
  Jet jet;
  Interval remainder;
  double validity = 0.0;

  int order() const { return jet.order(); }
};

// Polynomial part only (Horner).
Interval horner(const Jet& j, const Interval& s);

// Throws OutOfValidity unless s is inside [0, validity].
Interval jet_eval(const ForwardTaylorRep& rep, const Interval& s);

// Representation of phi': coefficients (i+1) c_{i+1}, remainder (n+1) R.
// Throws OrderTooLow for order 0.
ForwardTaylorRep derivative(const ForwardTaylorRep& rep);

// Jet of phi at base point sigma, enclosed for every sigma in e.
// Requires e inside [0, validity].
Jet taylor_shift(const ForwardTaylorRep& rep, const Interval& e);

// Truncated Cauchy product of two jets of equal order.
Jet jet_multiply(const Jet& a, const Jet& b);

// Jet of u^k. The recurrence used for w = u^k comes from u w' = k u' w:
//   w_0 = u_0^k,   i u_0 w_i = sum_{j=1..i} (k j - (i - j)) u_j w_{i-j}.
// Integer k uses repeated Cauchy products and k = 1/2 uses the square-root
// recurrence, both free of the division by u_0.
// Throws PositivityLost if k is not an integer and u0_range.lo <= 0.
Jet jet_compose_power(const Jet& u, double k, const Interval& u0_range);

// Jet of the DDE solution at a point where it has value x_now:
//   x_0 = x_now,  x_{i+1} = (-c x_i + d w_i) / (i+1)   (smooth)
//   x_{i+1} = -c x_i / (i+1)                             (decay)
// with w = jet of g(past). The result has the requested order; the smooth
// branch needs past_jet.order() >= order - 1.
Jet dde_jet_advance(Field field, const Interval& x_now, const Jet& past_jet, const Interval& c,
                    const Interval& d, double k, int order);

// Coefficients z (-c)^i / i! of z e^{-c s}.
Jet decay_jet(const Interval& z, const Interval& c, int order);

double binomial(int n, int k);

}  // namespace ddecap
