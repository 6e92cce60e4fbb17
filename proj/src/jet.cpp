#include "ddecap/jet.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace ddecap {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

Interval horner(const Jet& j, const Interval& s) {
  Interval acc(0.0);
  for (int i = j.order(); i >= 0; --i) acc = acc * s + j[static_cast<size_t>(i)];
  return acc;
}

Interval jet_eval(const ForwardTaylorRep& rep, const Interval& s) {
  if (s.lo() < 0.0 || s.hi() > rep.validity)
    throw OutOfValidity("evaluation point outside [0, " + std::to_string(rep.validity) + "]");
  Interval acc = rep.remainder;
  for (int i = rep.order(); i >= 0; --i) acc = acc * s + rep.jet[static_cast<size_t>(i)];
  return acc;
}

ForwardTaylorRep derivative(const ForwardTaylorRep& rep) {
  int n = rep.order();
  if (n < 1) throw OrderTooLow("derivative needs order >= 1");
  ForwardTaylorRep d;
  d.jet = Jet::zeros(n - 1);
  for (int i = 0; i < n; ++i)
    d.jet[static_cast<size_t>(i)] = Interval(static_cast<double>(i + 1)) * rep.jet[static_cast<size_t>(i + 1)];
  d.remainder = Interval(static_cast<double>(n + 1)) * rep.remainder;
  d.validity = rep.validity;
  return d;
}

Jet taylor_shift(const ForwardTaylorRep& rep, const Interval& e) {
  if (e.lo() < 0.0 || e.hi() > rep.validity) throw OutOfValidity("taylor shift outside validity");
  int n = rep.order();
  Jet out = Jet::zeros(n);
  for (int m = 0; m <= n; ++m) {
    // Horner in e over l = n+1 (remainder) down to m.
    Interval acc = Interval(binomial(n + 1, m)) * rep.remainder;
    for (int l = n; l >= m; --l) acc = acc * e + Interval(binomial(l, m)) * rep.jet[static_cast<size_t>(l)];
    out[static_cast<size_t>(m)] = acc;
  }
  return out;
}

Jet jet_multiply(const Jet& a, const Jet& b) {
  int n = std::min(a.order(), b.order());
  Jet r = Jet::zeros(n);
  for (int i = 0; i <= n; ++i) {
    Interval s(0.0);
    for (int j = 0; j <= i; ++j) s += a[static_cast<size_t>(j)] * b[static_cast<size_t>(i - j)];
    r[static_cast<size_t>(i)] = s;
  }
  return r;
}

namespace {

bool is_integer(double k) { return k == std::trunc(k) && std::fabs(k) < 1e6; }

Jet power_integer(const Jet& u, long k) {
  int n = u.order();
  Jet r = Jet::zeros(n);
  r[0] = Interval(1.0);
  Jet base = u;
  while (k > 0) {
    if (k & 1) r = jet_multiply(r, base);
    k >>= 1;
    if (k) base = jet_multiply(base, base);
  }
  return r;
}

Jet power_sqrt(const Jet& u) {
  int n = u.order();
  Jet w = Jet::zeros(n);
  w[0] = sqrt(u[0]);
  Interval two_w0 = Interval(2.0) * w[0];
  for (int i = 1; i <= n; ++i) {
    Interval s = u[static_cast<size_t>(i)];
    for (int j = 1; j < i; ++j) s -= w[static_cast<size_t>(j)] * w[static_cast<size_t>(i - j)];
    w[static_cast<size_t>(i)] = s / two_w0;
  }
  return w;
}

Jet power_general(const Jet& u, double k) {
  int n = u.order();
  Jet w = Jet::zeros(n);
  w[0] = pow_real(u[0], k);
  Interval K(k);
  for (int i = 1; i <= n; ++i) {
    Interval s(0.0);
    for (int j = 1; j <= i; ++j) {
      Interval coef = K * Interval(static_cast<double>(j)) - Interval(static_cast<double>(i - j));
      s += coef * u[static_cast<size_t>(j)] * w[static_cast<size_t>(i - j)];
    }
    w[static_cast<size_t>(i)] = s / (Interval(static_cast<double>(i)) * u[0]);
  }
  return w;
}

}  // namespace

Jet jet_compose_power(const Jet& u, double k, const Interval& u0_range) {
  if (u.c.empty()) throw OrderTooLow("empty jet");
  if (is_integer(k) && k >= 0) return power_integer(u, static_cast<long>(k));
  if (u0_range.lo() <= 0.0 || u[0].lo() <= 0.0)
    throw PositivityLost("power composition with non-integer exponent needs u0 > 0");
  if (k == 0.5) return power_sqrt(u);
  return power_general(u, k);
}

namespace {

// Point data: run the recurrence in extended precision and enclose with its
// accumulated relative error, keeping every coefficient within a few ulp.
bool decay_jet_point(double z, double c, Jet& r) {
  if constexpr (std::numeric_limits<long double>::digits < 64) {
    return false;
  } else {
    const long double u = std::ldexp(1.0L, -63);
    long double t = z;
    for (int i = 0; i < r.order(); ++i) {
      t = t * -static_cast<long double>(c) / static_cast<long double>(i + 1);
      const long double err = std::fabs(t) * u * static_cast<long double>(2 * i + 4);
      const long double lo = t - err, hi = t + err;
      double dlo = static_cast<double>(lo), dhi = static_cast<double>(hi);
      if (!std::isfinite(dlo) || !std::isfinite(dhi)) return false;
      if (static_cast<long double>(dlo) > lo) dlo = std::nextafter(dlo, -HUGE_VAL);
      if (static_cast<long double>(dhi) < hi) dhi = std::nextafter(dhi, HUGE_VAL);
      r[static_cast<size_t>(i + 1)] = Interval(dlo, dhi);
    }
    return true;
  }
}

}  // namespace

Jet decay_jet(const Interval& z, const Interval& c, int order) {
  Jet r = Jet::zeros(order);
  r[0] = z;
  if (z.is_point() && c.is_point() && decay_jet_point(z.lo(), c.lo(), r)) return r;
  for (int i = 0; i < order; ++i)
    r[static_cast<size_t>(i + 1)] = -c * r[static_cast<size_t>(i)] / Interval(static_cast<double>(i + 1));
  return r;
}

Jet dde_jet_advance(Field field, const Interval& x_now, const Jet& past_jet, const Interval& c,
                    const Interval& d, double k, int order) {
  if (field == Field::Decay) return decay_jet(x_now, c, order);
  if (order > 0 && past_jet.order() < order - 1) throw OrderTooLow("past jet order too low");
  Jet r = Jet::zeros(order);
  r[0] = x_now;
  if (order == 0) return r;
  Jet trimmed(std::vector<Interval>(past_jet.c.begin(), past_jet.c.begin() + order));
  Jet w = jet_compose_power(trimmed, k, trimmed[0]);
  for (int i = 0; i < order; ++i)
    r[static_cast<size_t>(i + 1)] =
        (-c * r[static_cast<size_t>(i)] + d * w[static_cast<size_t>(i)]) / Interval(static_cast<double>(i + 1));
  return r;
}

}  // namespace ddecap
