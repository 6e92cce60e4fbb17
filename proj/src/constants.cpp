#include "ddecap/constants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include "ddecap/errors.hpp"

namespace ddecap {

namespace {

using rounding::add_up;
using rounding::mul_down;
using rounding::sub_down;

// One grid slot of the tube with its absolute time window.
struct Cell {
  Interval anchor;  // absolute time of relative 0
  const ForwardTaylorRep* slot;
  double a, b;          // relative window inside the slot
  bool inside_length;   // window certainly lies before the segment end
};

void for_each_cell(const std::vector<SolRep>& tube, const std::function<void(const Cell&)>& fn) {
  for (size_t k = 0; k < tube.size(); ++k) {
    const Interval base(static_cast<double>(k + 1));
    for (const auto& piece : tube[k].pieces) {
      for (const auto& seg : piece.segments) {
        for (size_t j = 0; j < seg.slots.size(); ++j) {
          const double off = static_cast<double>(j) * seg.h;
          Cell cell{base + seg.start + Interval(off), &seg.slots[j], 0.0, seg.slots[j].validity,
                    off + seg.slots[j].validity <= seg.length.lo()};
          fn(cell);
        }
      }
    }
  }
}

Interval cell_time(const Cell& cl, double a, double b) { return cl.anchor + Interval(a, b); }

Interval cell_value(const Cell& cl, double a, double b) { return jet_eval(*cl.slot, Interval(a, b)); }

bool misses(const Interval& x, double lo, double hi) { return x.hi() < lo || x.lo() > hi; }

void require(ConstantsLedger& L, const std::string& name, bool ok, const std::string& detail = "") {
  L.checks.push_back({name, ok});
  if (!ok) throw LedgerInfeasible(name, detail.empty() ? "inequality not verified" : detail);
}

double largest_dyadic_below(double x) {
  int e;
  std::frexp(x, &e);
  double d = std::ldexp(1.0, e - 1);
  return d > x ? d / 2 : d;
}

// (p(t), p(t-1)) avoids the box around (1, xi0) on one period.
bool exclusion_box_clear(const OrbitCertificate& cert, const Interval& xi0, double delta0) {
  const double u_lo = 1.0 - delta0, u_hi = 1.0 + delta0;
  const double v_lo = sub_down(xi0.lo(), delta0), v_hi = add_up(xi0.hi(), delta0);
  const double t_end = cert.omega_p.hi();
  bool ok = true;

  std::function<bool(const Cell&, double, double, int)> clear = [&](const Cell& cl, double a, double b, int depth) {
    if (misses(cell_value(cl, a, b), u_lo, u_hi)) return true;
    Interval w = cell_time(cl, a, b) - Interval(1.0);
    // Before time 0 the delayed value stays above 1 > xi0 + delta0.
    if (w.hi() >= 0.0) {
      Interval v = tube_eval(cert.tube, Interval(std::max(w.lo(), 0.0), w.hi()));
      if (misses(v, v_lo, v_hi)) return true;
    } else {
      return true;
    }
    if (depth == 0) return false;
    double mid = 0.5 * (a + b);
    return clear(cl, a, mid, depth - 1) && clear(cl, mid, b, depth - 1);
  };

  for_each_cell(cert.tube, [&](const Cell& cl) {
    if (!ok) return;
    Interval t = cell_time(cl, cl.a, cl.b);
    if (t.hi() < 1.0 || t.lo() > t_end) return;
    if (!clear(cl, cl.a, cl.b, 8)) ok = false;
  });
  return ok;
}

Interval g_power(const Interval& x, double k) { return pow_real(x, k); }

// x^n for natural n stored as a double.
Interval pow_n(const Interval& x, double n) {
  if (n < 1073741824.0) return pow(x, static_cast<int>(n));
  if (x.lo() < 0.0) throw DomainError("pow_n of negative base");
  const Interval N(n);
  double lo = x.lo() == 0.0 ? 0.0 : exp(N * log(Interval(x.lo()))).lo();
  double hi = x.hi() == 0.0 ? 0.0 : exp(N * log(Interval(x.hi()))).hi();
  return {lo, hi};
}

std::optional<Interval> clip(const Interval& x, double lo, double hi) {
  if (x.hi() < lo || x.lo() > hi) return std::nullopt;
  return Interval(std::max(x.lo(), lo), std::min(x.hi(), hi));
}

}  // namespace

Interval prototype_f(const Interval& xi, double k, double n) {
  std::optional<Interval> acc;
  if (auto low = clip(xi, 0.0, 1.0)) {
    Interval u = pow_n(*low, n);
    acc = pow_real(*low, k) / (Interval(1.0) + u);
  }
  if (auto high = clip(xi, 1.0, std::numeric_limits<double>::max())) {
    Interval y = pow_n(Interval(1.0) / *high, n);
    Interval v = pow_real(*high, k) * y / (Interval(1.0) + y);
    acc = acc ? hull(*acc, v) : v;
  }
  if (!acc) throw DomainError("prototype nonlinearity needs xi >= 0");
  return *acc;
}

Interval prototype_f_prime(const Interval& xi, double k, double n) {
  if (xi.lo() <= 0.0) throw DomainError("derivative bound needs xi > 0");
  const Interval K(k), N(n);
  std::optional<Interval> acc;
  if (auto low = clip(xi, 0.0, 1.0)) {
    Interval u = pow_n(*low, n);
    Interval s = Interval(1.0) + u;
    Interval v = pow_real(*low, k - 1.0) * (K / s - N * u / sqr(s));
    acc = v;
  }
  if (auto high = clip(xi, 1.0, std::numeric_limits<double>::max())) {
    Interval y = pow_n(Interval(1.0) / *high, n);
    Interval s = Interval(1.0) + y;
    Interval v = pow_real(*high, k - 1.0) * (K * y / s - N * y / sqr(s));
    acc = acc ? hull(*acc, v) : v;
  }
  return *acc;
}

double sup_f(double a, double b, double k, double n) {
  if (!(a >= 0.0) || !(b >= a)) throw DomainError("bad interval for sup_f");
  const bool unbounded = std::isinf(b);
  if (n <= k) {
    // Increasing everywhere; for n == k the limit at infinity is 1.
    if (unbounded) {
      if (n < k) return std::numeric_limits<double>::infinity();
      return 1.0;
    }
    return prototype_f(Interval(b), k, n).hi();
  }
  // Unimodal with maximum at (k / (n - k))^(1/n).
  Interval peak = exp(log(Interval(k) / (Interval(n) - Interval(k))) / Interval(n));
  double s = prototype_f(Interval(a), k, n).hi();
  if (!unbounded) s = std::max(s, prototype_f(Interval(b), k, n).hi());
  const double top = unbounded ? std::numeric_limits<double>::max() : b;
  if (auto inner = clip(peak, a, top)) s = std::max(s, prototype_f(*inner, k, n).hi());
  return s;
}

double sup_f_prime(double a, double b, double k, double n) {
  if (!(a > 0.0) || !(b >= a) || std::isinf(b)) throw DomainError("bad interval for sup_f_prime");
  // |f'(xi)| <= (k + n) xi^(k-1) / (1 + xi^n).
  Interval xk = max(pow_real(Interval(a), k - 1.0), pow_real(Interval(b), k - 1.0));
  Interval damp = a > 1.0 ? [&] {
    Interval y = pow_n(Interval(1.0) / Interval(a), n);
    return y / (Interval(1.0) + y);
  }()
                          : Interval(1.0) / (Interval(1.0) + pow_n(Interval(a), n));
  double majorant = ((Interval(k) + Interval(n)) * xk * damp).hi();

  const int panels = 1024;
  double numeric = 0.0;
  const double w = (b - a) / panels;
  for (int i = 0; i < panels; ++i) {
    double lo = a + i * w;
    double hi = i + 1 == panels ? b : a + (i + 1) * w;
    numeric = std::max(numeric, abs(prototype_f_prime(Interval(lo, hi), k, n)).hi());
  }
  return std::min(majorant, numeric);
}

ConstantsLedger compute_ledger(const OrbitCertificate& cert) {
  if (cert.tube.empty()) throw LedgerInfeasible("tube", "certificate carries no solution tube");
  const auto& P = cert.params;
  ConstantsLedger L;
  L.k = P.k;
  L.c = P.c;
  L.d = P.d;
  L.omega_p = cert.omega_p;
  L.L = cert.L;
  const Interval& c = P.c;
  const Interval& d = P.d;
  const double k = P.k;

  L.xi0 = exp(log(c / d) / Interval(k));

  // Extremes of p over one period.
  {
    double m_lo = std::numeric_limits<double>::infinity(), m_hi = m_lo;
    double M_lo = -m_lo, M_hi = -m_lo;
    for_each_cell(cert.tube, [&](const Cell& cl) {
      Interval t = cell_time(cl, cl.a, cl.b);
      if (t.lo() > cert.omega_p.hi()) return;
      Interval v = cell_value(cl, cl.a, cl.b);
      m_lo = std::min(m_lo, v.lo());
      M_hi = std::max(M_hi, v.hi());
      if (cl.inside_length) {
        m_hi = std::min(m_hi, v.hi());
        M_lo = std::max(M_lo, v.lo());
      }
    });
    m_hi = std::max(m_hi, m_lo);
    M_lo = std::min(M_lo, M_hi);
    L.p_m = Interval(m_lo, m_hi);
    L.p_M = Interval(M_lo, M_hi);
  }
  require(L, "p_m < 1 < p_M", L.p_m.hi() < 1.0 && L.p_M.lo() > 1.0);

  const Interval spread = L.p_M - L.p_m;
  double kappa1 = (L.p_m - Interval(0.1) * spread).lo();
  if (!(kappa1 > 0.0)) kappa1 = 0.5 * L.p_m.lo();
  L.kappa1 = Interval(kappa1);
  require(L, "0 < kappa1 < p_m", kappa1 > 0.0 && kappa1 < L.p_m.lo());

  const Interval dc = d / c;
  double kappa2 = (L.p_M + Interval(0.1) * spread).hi();
  if (!(kappa2 < dc.lo())) kappa2 = (Interval(0.5) * (Interval(L.p_M.hi()) + Interval(dc.lo()))).hi();
  L.kappa2 = Interval(kappa2);
  require(L, "p_M < kappa2 < d/c", L.p_M.hi() < kappa2 && kappa2 < dc.lo());

  L.m = static_cast<int>(std::floor(cert.omega_p.lo()));
  require(L, "m = floor(omega_p)",
          L.m >= 1 && static_cast<double>(L.m) <= cert.omega_p.lo() && cert.omega_p.hi() < L.m + 1.0,
          "omega_p enclosure straddles an integer");

  L.k0 = 1;  // omega_p itself
  for (const auto& t : cert.crossing_times)
    if (t.hi() < cert.omega_p.lo() && t.lo() > 0.0) ++L.k0;

  // delta0: largest dyadic below half the distance of xi0 to {0, 1}.
  {
    const double room = 0.5 * std::min(L.xi0.lo(), sub_down(1.0, L.xi0.hi()));
    if (!(room > 0.0)) throw LedgerInfeasible("delta0", "xi0 not separated from 0 and 1");
    double delta0 = largest_dyadic_below(room);
    bool found = false;
    for (int it = 0; it < 40 && !found; ++it) {
      if (exclusion_box_clear(cert, L.xi0, delta0))
        found = true;
      else
        delta0 /= 2;
    }
    if (!found) throw LedgerInfeasible("delta0", "no dyadic delta0 clears the exclusion box at this tube width");
    L.delta0 = Interval(delta0);
  }

  // delta1 and mu.
  {
    const Interval g_below = g_power(L.xi0 - L.delta0, k);
    const Interval g_above = g_power(L.xi0 + L.delta0, k);
    double delta1 = L.delta0.lo() / 2;
    bool found = false;
    for (int it = 0; it < 40 && !found; ++it) {
      const Interval D1(delta1);
      Interval A = c * (Interval(1.0) - D1) - d * g_below;
      Interval B = d * g_above - c * (Interval(1.0) + D1);
      Interval C = c * (Interval(1.0) - D1);
      Interval mu = min(A, min(B, C));
      if (mu.lo() > 0.0) {
        L.delta1 = D1;
        L.mu = Interval(mu.lo());
        found = true;
      } else {
        delta1 /= 2;
      }
    }
    if (!found) throw LedgerInfeasible("delta1", "no delta1 gives a positive mu");
  }
  require(L, "delta1 < delta0 < min(xi0, 1 - xi0)",
          L.delta1.hi() < L.delta0.lo() && L.delta0.hi() < L.xi0.lo() &&
              L.delta0.hi() < (Interval(1.0) - L.xi0).lo());
  require(L, "mu > 0", L.mu.lo() > 0.0);

  L.g_prime_norm = Interval((Interval(k) * pow_real(Interval(L.kappa1.lo(), 1.0), k - 1.0)).hi());
  L.k1 = Interval(2.0) * Interval(3.0 * L.k0 + 2.0) / L.mu;
  L.k2 = Interval(2.0) + dc + (d + L.delta1) * (Interval(2.0) + Interval(2.0) * L.k1 + L.g_prime_norm);
  const Interval k2m = pow(L.k2, L.m);
  const Interval room2 = min(L.delta1 / Interval(2.0), min(L.p_m - L.kappa1, L.kappa2 - L.p_M));
  L.delta2 = room2 / k2m;
  require(L, "delta2 > 0", L.delta2.lo() > 0.0);

  {
    double g1 = sub_down(cert.L.lo(), 1.0);
    double g2 = (Interval(L.m + 1.0) - cert.omega_p).lo();
    double gamma = 0.5 * std::min(g1, g2);
    L.gamma = Interval(gamma);
    require(L, "0 < gamma < m + 1 - omega_p", gamma > 0.0 && gamma < g2);
    require(L, "p > 1 on [-1 - gamma, 0)", gamma < g1);
  }

  // Minimum of p over [-1 - gamma, -gamma], periodic time.
  double min_p = std::numeric_limits<double>::infinity();
  {
    const double w_lo = (cert.omega_p - Interval(1.0) - L.gamma).lo();
    const double w_hi = (cert.omega_p - L.gamma).hi();
    for_each_cell(cert.tube, [&](const Cell& cl) {
      const int parts = 8;
      const double step = (cl.b - cl.a) / parts;
      for (int i = 0; i < parts; ++i) {
        double a = cl.a + i * step, b = i + 1 == parts ? cl.b : cl.a + (i + 1) * step;
        Interval t = cell_time(cl, a, b);
        if (t.hi() < w_lo || t.lo() > w_hi) continue;
        min_p = std::min(min_p, cell_value(cl, a, b).lo());
      }
    });
  }
  require(L, "min p over [-1 - gamma, -gamma] > 1", min_p > 1.0);

  {
    Interval b1 = room2;
    Interval b2 = c / Interval(2.0);
    Interval b3 = expm1(c * L.gamma) / Interval(2.0);
    Interval b4 = (Interval(min_p) - Interval(1.0)) / Interval(2.0);
    Interval bound = min(min(b1, b2), min(b3, b4));
    double eps0 = mul_down(0.9, bound.lo());
    L.eps0 = Interval(eps0);
    require(L, "eps0 within its bounds",
            eps0 > 0.0 && eps0 <= b1.lo() && eps0 <= b2.lo() && eps0 <= b3.lo() && eps0 <= b4.lo());
  }
  L.eps1 = L.eps0 / k2m;
  require(L, "eps1 = eps0 / k2^m", L.eps1.lo() > 0.0 && overlaps(L.eps1 * k2m, L.eps0));

  L.sigma0 = log((Interval(1.0) + Interval(2.0) * L.eps0) / (Interval(1.0) + L.eps0)) / c;
  L.sigma1 = log1p(L.eps0) / c;
  const Interval sigma_sum = L.sigma0 + L.sigma1;
  require(L, "sigma0 + sigma1 = log(1 + 2 eps0) / c", overlaps(sigma_sum, log1p(Interval(2.0) * L.eps0) / c));
  require(L, "sigma0 + sigma1 <= gamma", sigma_sum.hi() <= L.gamma.lo());

  try {
    L.epsilon = compute_epsilon(L, c, d);
  } catch (const EpsilonVanishes& e) {
    throw LedgerInfeasible("epsilon", e.what());
  }
  L.checks.push_back({"epsilon constraints", true});
  L.K0 = Interval(2.0) * max(pow_real(L.kappa1, k - 1.0), pow_real(L.kappa2, k - 1.0));
  L.N = compute_N(L, k);
  require(L, "N inequalities at N and 2N",
          check_N_inequalities(L, k, L.N).all() && check_N_inequalities(L, k, 2.0 * L.N).all());
  return L;
}

Interval measure_delta_check(const OrbitCertificate& cert, const ConstantsLedger& ledger, const Interval& delta) {
  const double lo = sub_down(1.0, delta.hi());
  const double hi = add_up(1.0, delta.hi());
  const double tol = std::max(delta.hi() * 1e-4, 1e-15);

  // r on [0, sigma1] is p on [-sigma1, 0] = (1 + eps0) e^{-c t}-type decay.
  double total = 0.0;
  if (ledger.sigma1.hi() > 0.0)
    total = std::min(ledger.sigma1.hi(), (log1p(delta) / ledger.c).hi());

  const double t_end = (Interval(static_cast<double>(ledger.m)) - ledger.sigma1).hi();
  std::function<double(const Cell&, double, double, int)> measure = [&](const Cell& cl, double a, double b, int depth) {
    if (misses(cell_value(cl, a, b), lo, hi)) return 0.0;
    if (depth == 0 || b - a <= tol) return b - a;
    double mid = 0.5 * (a + b);
    return add_up(measure(cl, a, mid, depth - 1), measure(cl, mid, b, depth - 1));
  };
  for_each_cell(cert.tube, [&](const Cell& cl) {
    Interval t = cell_time(cl, cl.a, cl.b);
    if (t.lo() > t_end || t.hi() < 0.0) return;
    total = add_up(total, measure(cl, cl.a, cl.b, 60));
  });
  return Interval(total);
}

Interval compute_epsilon(const ConstantsLedger& ledger, const Interval& c, const Interval& d) {
  const Interval one(1.0), two(2.0);
  const Interval& e0 = ledger.eps0;
  const Interval& e1 = ledger.eps1;
  Interval b1 = e1 / (two * (one + e0));
  Interval b2 = e1 / (two * (d + e1));
  Interval de = d + e1;
  Interval b3 = one / (de * (one + Interval(4.0) * de / (c - e1)) * pow(one + de, ledger.m));
  Interval bound = min(b1, min(b2, b3));
  double eps = std::min(mul_down(0.9, bound.lo()), 0.5);
  while (eps >= 1e-300) {
    bool g_ok = pow_real(one - Interval(eps), ledger.k).lo() > (Interval(4.0) * Interval(eps)).hi();
    if (g_ok && eps < b1.lo() && eps < b2.lo() && eps < b3.lo()) return Interval(eps);
    eps /= 2;
  }
  throw EpsilonVanishes("no epsilon above 1e-300 satisfies the threshold constraints");
}

NThresholdChecks check_N_inequalities(const ConstantsLedger& L, double k, double n) {
  NThresholdChecks r;
  const double eps = L.epsilon.lo();
  if (!(eps > 0.0) || n < k) return r;
  const Interval E(eps), N(n);
  const double log_eps = log(E).lo();
  const Interval l_plus = log1p(E);
  r.n1 = (N * log1p(-E)).hi() < log_eps;
  r.n2 = (-(N - Interval(k)) * l_plus).hi() < log_eps;
  // (K0 n)^{m+1} / (1 + (1+eps)^n) <= (K0 n)^{m+1} (1+eps)^{-n}; past the
  // maximum of the log of the left side it only decreases.
  Interval lhs = Interval(L.m + 1.0) * log(L.K0 * N) - N * l_plus;
  r.n3 = lhs.hi() < log_eps && (N * l_plus).lo() >= L.m + 1.0;
  return r;
}

double compute_N(const ConstantsLedger& ledger, double k) {
  double lo = std::max(1.0, std::ceil(k));
  if (check_N_inequalities(ledger, k, lo).all()) return lo;
  double hi = lo;
  while (!check_N_inequalities(ledger, k, hi).all()) {
    lo = hi;
    hi *= 2;
    if (!std::isfinite(hi)) throw OverflowError("prototype threshold overflow");
  }
  while (hi - lo > 1.0) {
    double mid = std::floor(lo + (hi - lo) / 2);
    if (mid <= lo || mid >= hi) break;
    if (check_N_inequalities(ledger, k, mid).all())
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

bool Main0Report::all_pass() const {
  for (const auto& e : entries)
    if (e.name != "(iv) inf" && !e.pass) return false;
  return !entries.empty();
}

bool Main0Report::strong_iv() const {
  for (const auto& e : entries)
    if (e.name == "(iv) inf") return e.pass;
  return false;
}

Main0Report check_main0(const ConstantsLedger& L, const Interval& a, const Interval& b, double n, double k,
                        bool a_is_c, bool b_is_d) {
  if (n < k) throw DomainError("prototype needs n >= k");
  const Interval one(1.0), two(2.0);
  Main0Report rep;
  auto add = [&](const std::string& name, const Interval& lhs, const Interval& rhs) {
    rep.entries.push_back({name, lhs, rhs, lhs.hi() < rhs.lo()});
  };

  add("(i)", (a_is_c ? Interval(0.0) : abs(L.c - a)) * (one + L.eps0), L.eps1 / two);
  add("(ii)", b_is_d ? Interval(0.0) : abs(L.d - b), L.eps1);

  // |f - g| = xi^{k+n} / (1 + xi^n) below 1, increasing; f itself above 1.
  const double left = (one - L.eps1).hi();
  Interval X(left);
  Interval u = pow_n(X, n);
  const Interval N(n);
  // 1 -+ eps1 may round to 1; (1 -+ eps1)^{-+n} in log form stays sharp.
  double below = std::min((pow_real(X, k) * u / (one + u)).hi(), exp(N * log1p(-L.eps1)).hi());
  double above = std::min(sup_f((one + L.eps1).lo(), L.kappa2.hi(), k, n),
                          (pow_real(L.kappa2, k) * exp(-N * log1p(L.eps1))).hi());
  add("(iii)", Interval(std::max(below, above)), L.eps1);

  const double from = (one + L.eps0).lo();
  double sup_inf = sup_f(from, std::numeric_limits<double>::infinity(), k, n);
  // The sup over [from, inf) also bounds the one over [from, kappa2].
  add("(iv)", b * Interval(std::min(sup_f(from, L.kappa2.hi(), k, n), sup_inf)), L.eps1 / two);
  if (std::isfinite(sup_inf))
    add("(iv) inf", b * Interval(sup_inf), L.eps1 / two);
  else
    rep.entries.push_back({"(iv) inf", Interval(std::numeric_limits<double>::max()), L.eps1 / two, false});

  // (v) in log form: the power of (1 + b |f'|) overflows for large n.
  const double s_top = sup_f_prime(from, L.kappa2.hi(), k, n);
  const Interval s_all(sup_f_prime(L.kappa1.lo(), L.kappa2.hi(), k, n));
  // Above 1: |f'| <= (k + n) xi^(k-1) xi^(-n).
  const Interval xk = max(pow_real(Interval(from), k - 1.0), pow_real(L.kappa2, k - 1.0));
  double log_top = (log((Interval(k) + N) * xk) - N * log(Interval(from))).hi();
  if (s_top > 0.0) log_top = std::min(log_top, log(Interval(s_top)).hi());
  if (s_top == 0.0) {
    add("(v)", Interval(0.0), one);
  } else {
    Interval lg = log(b) + log(one + Interval(4.0) * b / a) + Interval(log_top) +
                  Interval(static_cast<double>(L.m)) * log1p(b * s_all);
    if (lg.hi() < 700.0)
      add("(v)", exp(lg), one);
    else
      rep.entries.push_back({"(v)", Interval(std::numeric_limits<double>::max()), one, false});
  }
  return rep;
}

namespace {

std::string fmt_interval(const Interval& x) { return to_decimal_pair(x, 10); }

std::string fmt_count(double n) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.0f", n);
  return buf;
}

}  // namespace

std::string format_ledger(const ConstantsLedger& L) {
  std::ostringstream os;
  auto row = [&](const char* name, const std::string& value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%-10s", name);
    os << buf << value << "\n";
  };
  row("xi0", fmt_interval(L.xi0));
  row("p_m", fmt_interval(L.p_m));
  row("p_M", fmt_interval(L.p_M));
  row("kappa1", fmt_interval(L.kappa1));
  row("kappa2", fmt_interval(L.kappa2));
  row("m", std::to_string(L.m));
  row("k0", std::to_string(L.k0));
  row("delta0", fmt_interval(L.delta0));
  row("delta1", fmt_interval(L.delta1));
  row("mu", fmt_interval(L.mu));
  row("|g'|", fmt_interval(L.g_prime_norm));
  row("k1", fmt_interval(L.k1));
  row("k2", fmt_interval(L.k2));
  row("delta2", fmt_interval(L.delta2));
  row("gamma", fmt_interval(L.gamma));
  row("eps0", fmt_interval(L.eps0));
  row("eps1", fmt_interval(L.eps1));
  row("sigma0", fmt_interval(L.sigma0));
  row("sigma1", fmt_interval(L.sigma1));
  row("epsilon", fmt_interval(L.epsilon));
  row("K0", fmt_interval(L.K0));
  row("N", fmt_count(L.N));
  os << "\n";
  for (const auto& c : L.checks) os << (c.verified ? "verified  " : "FAILED    ") << c.name << "\n";
  return os.str();
}

std::string format_main0(const Main0Report& r) {
  std::ostringstream os;
  for (const auto& e : r.entries) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%-10s", e.name.c_str());
    os << buf << (e.pass ? "pass  " : "FAIL  ") << to_decimal_pair(e.lhs, 6) << " < "
       << to_decimal_pair(e.rhs, 6) << "\n";
  }
  return os.str();
}

}  // namespace ddecap
