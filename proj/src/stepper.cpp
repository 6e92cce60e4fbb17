#include "ddecap/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ddecap {

void validate(const StepConfig& cfg) {
  if (cfg.c.lo() <= 0.0) throw DomainError("c must be positive");
  if (cfg.field == Field::Smooth && cfg.d.lo() <= 0.0) throw DomainError("d must be positive");
  if (cfg.order < 1) throw OrderTooLow("stepper needs order >= 1");
  if (cfg.enclosure_inflation <= 1.0) throw DomainError("enclosure inflation must exceed 1");
  if (cfg.max_enclosure_iters < 1) throw DomainError("need at least one enclosure iteration");
}

namespace {

Interval factorial(int n) { return Interval(std::tgamma(n + 1.0)); }

// z e^{-c t}. Point data is evaluated in extended precision; the libm expl
// error (a few units of 2^-64) is covered by a 2^-58 relative margin.
Interval decay_value(const Interval& z, const Interval& c, const Interval& t) {
  if constexpr (std::numeric_limits<long double>::digits >= 64) {
    if (z.is_point() && c.is_point() && t.is_point()) {
      const long double v = static_cast<long double>(z.lo()) *
                            std::exp(-static_cast<long double>(c.lo()) * static_cast<long double>(t.lo()));
      const long double err = std::fabs(v) * std::ldexp(1.0L, -58);
      const long double lo = v - err, hi = v + err;
      double dlo = static_cast<double>(lo), dhi = static_cast<double>(hi);
      if (std::isfinite(dlo) && std::isfinite(dhi)) {
        if (static_cast<long double>(dlo) > lo) dlo = std::nextafter(dlo, -HUGE_VAL);
        if (static_cast<long double>(dhi) < hi) dhi = std::nextafter(dhi, HUGE_VAL);
        return {dlo, dhi};
      }
    }
  }
  return z * exp(-c * t);
}

Interval inflate(const Interval& x, double factor) {
  double m = x.mid();
  double r = std::max(m - x.lo(), x.hi() - m);
  double pad = r * factor + 1e-15 * (1.0 + std::fabs(m));
  return {rounding::sub_down(m, pad), rounding::add_up(m, pad)};
}

SlotStep advance_decay(const StepConfig& cfg, const Interval& z, double v) {
  const int n = cfg.order;
  SlotStep out;
  out.slot.jet = decay_jet(z, cfg.c, n);
  out.slot.remainder = z * pow(-cfg.c, n + 1) / factorial(n + 1) * exp(-cfg.c * Interval(0.0, v));
  out.slot.validity = v;
  out.end_value = z * exp(-cfg.c * Interval(v));
  return out;
}

// x^[n+1] over S from an enclosure E of x over S and the input jets WS.
Interval top_coefficient(const StepConfig& cfg, const Interval& E, const Jet& WS) {
  Interval X = E;
  for (int i = 0; i <= cfg.order; ++i)
    X = (-cfg.c * X + cfg.d * WS[static_cast<size_t>(i)]) / Interval(static_cast<double>(i + 1));
  return X;
}

SlotStep advance_smooth(const StepConfig& cfg, const Interval& z, const ForwardTaylorRep& past, double v) {
  const int n = cfg.order;
  if (past.order() < n) throw OrderTooLow("input slot order below stepper order");
  if (v > past.validity) throw OutOfValidity("input slot does not cover the step");

  Jet u(std::vector<Interval>(past.jet.c.begin(), past.jet.c.begin() + n + 1));
  Jet w = jet_compose_power(u, cfg.k, u[0]);
  Jet alpha = decay_jet(Interval(1.0), cfg.c, n);
  Jet beta = Jet::zeros(n);
  for (int i = 0; i < n; ++i)
    beta[static_cast<size_t>(i + 1)] =
        (-cfg.c * beta[static_cast<size_t>(i)] + cfg.d * w[static_cast<size_t>(i)]) / Interval(static_cast<double>(i + 1));

  ForwardTaylorRep rep;
  rep.jet = Jet::zeros(n);
  for (int i = 0; i <= n; ++i)
    rep.jet[static_cast<size_t>(i)] = alpha[static_cast<size_t>(i)] * z + beta[static_cast<size_t>(i)];
  rep.validity = v;

  const Interval S(0.0, v);
  ForwardTaylorRep trimmed{u, past.remainder, past.validity};
  Jet U = taylor_shift(trimmed, S);
  Jet WS = jet_compose_power(U, cfg.k, U[0]);
  const Interval G = WS[0];

  auto picard = [&](const Interval& E) { return z + S * (-cfg.c * E + cfg.d * G); };
  Interval E = inflate(picard(z), cfg.enclosure_inflation);
  bool ok = false;
  for (int it = 0; it < cfg.max_enclosure_iters; ++it) {
    Interval F = picard(E);
    if (subset(F, E)) {
      E = F;
      ok = true;
      break;
    }
    E = inflate(hull(E, F), cfg.enclosure_inflation);
  }
  if (!ok) throw EnclosureFailure("a-priori enclosure did not validate");

  Interval xi = top_coefficient(cfg, E, WS);
  rep.remainder = xi;
  if (auto E2 = intersect(E, jet_eval(rep, S))) {
    Interval xi2 = top_coefficient(cfg, *E2, WS);
    if (auto both = intersect(xi, xi2)) rep.remainder = *both;
  }

  const Interval V(v);
  SlotStep out;
  out.end_value = z * horner(alpha, V) + horner(beta, V) + rep.remainder * pow(V, n + 1);
  out.slot = std::move(rep);
  return out;
}

}  // namespace

SlotStep advance_slot(const StepConfig& cfg, const Interval& z, const ForwardTaylorRep& past, double v) {
  if (!(v > 0.0)) throw OutOfValidity("step length must be positive");
  if (cfg.field == Field::Decay) return advance_decay(cfg, z, v);
  return advance_smooth(cfg, z, past, v);
}

FSetGrid step_full(const StepConfig& cfg, const FSetGrid& x) {
  validate(cfg);
  const double h = x.h();
  SlotStep st = advance_slot(cfg, x.head, x.slots.front(), h);
  FSetGrid out;
  out.p = x.p;
  out.slots.assign(x.slots.begin() + 1, x.slots.end());
  out.slots.push_back(std::move(st.slot));
  out.head = st.end_value;
  return out;
}

FSetGrid step_partial(const StepConfig& cfg, const FSetGrid& x, const Interval& eps) {
  validate(cfg);
  const double h = x.h();
  if (eps.lo() < 0.0 || eps.hi() >= h) throw OutOfValidity("partial step must lie in [0, h)");
  if (eps.hi() == 0.0) return x;
  SlotStep st = advance_slot(cfg, x.head, x.slots.front(), eps.hi());
  std::vector<ForwardTaylorRep> seq = x.slots;
  seq.back().validity = h;
  seq.push_back(st.slot);
  FSetGrid out;
  out.p = x.p;
  out.slots = reanchor(seq, h, eps, 1.0);
  out.head = jet_eval(st.slot, eps);
  return out;
}

FSetGrid propagate(const StepConfig& cfg, FSetGrid x, int steps, const Interval& eps) {
  if (steps < 0) throw DomainError("negative step count");
  for (int i = 0; i < steps; ++i) x = step_full(cfg, x);
  return step_partial(cfg, x, eps);
}

Segment shift_smooth(const StepConfig& cfg, const Segment& past, const Interval& head, Interval& end_value) {
  validate(cfg);
  Segment out;
  out.start = past.start;
  out.end = past.end;
  out.length = past.length;
  out.head = head;
  out.h = past.h;
  out.slots.reserve(past.slots.size());
  Interval z = head;
  for (size_t j = 0; j < past.slots.size(); ++j) {
    try {
      SlotStep st = advance_slot(cfg, z, past.slots[j], past.slots[j].validity);
      out.slots.push_back(std::move(st.slot));
      z = st.end_value;
    } catch (const EnclosureFailure& e) {
      throw EnclosureFailure(std::string(e.what()) + " (slot " + std::to_string(j) + ")");
    }
  }
  end_value = slots_eval(out.slots, out.h, Interval(std::max(out.length.lo(), 0.0), out.length.hi()));
  return out;
}

Segment shift_decay(const StepConfig& cfg, const Interval& start, const Interval& end, const Interval& length,
                    double h, const Interval& head, Interval& end_value) {
  if (cfg.c.lo() <= 0.0) throw DomainError("c must be positive");
  const int n = cfg.order;
  Segment out;
  out.start = start;
  out.end = end;
  out.length = length;
  out.head = head;
  out.h = h;
  const int m = slot_count(length.hi(), h);
  const Interval cfac = pow(-cfg.c, n + 1) / factorial(n + 1);
  out.slots.reserve(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j) {
    double v = (j == m - 1) ? last_validity(length.hi(), h, m) : h;
    Interval zj = decay_value(head, cfg.c, Interval(j * h));
    ForwardTaylorRep s;
    s.jet = decay_jet(zj, cfg.c, n);
    s.remainder = zj * cfac * exp(-cfg.c * Interval(0.0, v));
    s.validity = v;
    out.slots.push_back(std::move(s));
  }
  end_value = decay_value(head, cfg.c, Interval(std::max(length.lo(), 0.0), length.hi()));
  return out;
}

}  // namespace ddecap
