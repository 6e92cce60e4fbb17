// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ddecap/analytic.hpp"
#include "ddecap/constants.hpp"
#include "ddecap/errors.hpp"
#include "ddecap/jet.hpp"
#include "ddecap/oracle.hpp"
#include "ddecap/proof.hpp"
#include "mp_oracle.hpp"
#include "rows.hpp"

using namespace ddecap;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      pass = false;
      detail << what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void table_row(const Row& row, double time_limit, bool check_L, double width_limit, Outcome& out) {
  const auto t0 = std::chrono::steady_clock::now();
  OrbitCertificate cert = verify_property_P(row_params(row));
  const double secs = seconds_since(t0);
  out.require(overlaps(cert.omega_p, published_omega(row)), "omega_p misses the published enclosure");
  if (check_L) out.require(overlaps(cert.L, published_L(row)), "L misses the published enclosure");
  if (width_limit > 0) out.require(cert.omega_p.diam() <= width_limit, "omega_p too wide");
  out.require(secs <= time_limit, "runtime over the limit");
  if (out.pass)
    out.detail << "omega_p " << to_decimal_pair(cert.omega_p, 15) << " width " << cert.omega_p.diam() << ", L "
               << to_decimal_pair(cert.L, 15) << ", " << secs << " s";
}

void criterion_fast_row(Outcome& out) { table_row(kRow1, 300.0, true, 1e-6, out); }

void criterion_medium_row(Outcome& out) { table_row(kRow2, 1800.0, false, 0.0, out); }

void criterion_analytic(Outcome& out) {
  out.require(check_P_sufficient(Interval(1.0), from_decimal("7.38907"), 2.0).certified,
              "(2, 1, 7.38907) not certified");
  out.require(!check_P_sufficient(Interval(1.0), from_decimal("7.389"), 2.0).certified,
              "(2, 1, 7.389) certified");
  int agree = 0;
  for (double c : {0.5, 1.0, 1.5, 2.0, 3.0}) {
    Interval generic = check_P_sufficient(Interval(c), Interval(1e9), 1.0).threshold;
    Interval closed = corollary_threshold(Interval(c), 1.0);
    // k = 1: max{e^c - e^{-c}, c e^c}
    Interval direct = max(exp(Interval(c)) - exp(-Interval(c)), Interval(c) * exp(Interval(c)));
    if (overlaps(generic, closed) && overlaps(generic, direct)) ++agree;
  }
  out.require(agree == 5, "k = 1 thresholds disagree on the c grid");
  if (out.pass) out.detail << "verdicts as expected, k = 1 thresholds agree at 5/5 grid points";
}

struct SoundCase {
  std::string name;
  OrbitParams params;
  bool ledger;
};

void criterion_soundness(Outcome& out) {
  std::vector<SoundCase> cases;
  for (const Row* r : {&kRow1, &kRow2, &kRow6}) cases.push_back({r->name, row_params(*r), true});
  for (auto [k, c, d] : {std::tuple{1.0, "1", "3"}, std::tuple{2.0, "1", "8"}, std::tuple{0.5, "1", "3"}}) {
    Row r{"triple", k, c, d, 2, 128, 4, "0", "0", "0", "0"};
    cases.push_back({std::string("(") + (k == 0.5 ? "0.5" : k == 1.0 ? "1" : "2") + ", " + c + ", " + d + ")",
                     row_params(r), false});
  }
  long samples = 0, crossings = 0, deltas = 0;
  for (const SoundCase& cs : cases) {
    OrbitCertificate cert = verify_property_P(cs.params);
    OracleConfig oc;
    oc.k = cs.params.k;
    oc.c = cs.params.c.mid();
    oc.d = cs.params.d.mid();
    oc.t_end = std::ceil(cert.omega_p.hi()) + 1.0;
    oc.step = 1e-4;
    Trajectory tr = simulate(oc);
    oc.step = 5e-5;
    Trajectory ref = simulate(oc);

    const int n = static_cast<int>(256 * cert.omega_p.hi());
    for (int i = 0; i <= n; ++i) {
      const double t = cert.omega_p.hi() * i / n;
      const double v = tr.eval(t);
      const double err = 2.0 * std::fabs(v - ref.eval(t)) + 1e-12 * std::max(1.0, std::fabs(v));
      Interval x = tube_eval(cert.tube, Interval(t));
      const double gap = x.contains(v) ? 0.0 : std::min(std::fabs(v - x.lo()), std::fabs(v - x.hi()));
      out.require(gap <= err, cs.name + ": oracle leaves the tube at t = " + std::to_string(t));
      ++samples;
    }
    for (const auto& c : tr.crossings) {
      if (c.time > cert.omega_p.hi()) break;
      bool inside = false;
      for (size_t i = 0; i < cert.crossing_times.size(); ++i) {
        const Interval& ct = cert.crossing_times[i];
        if (ct.lo() - 1e-9 <= c.time && c.time <= ct.hi() + 1e-9 && cert.crossing_directions[i] == c.direction)
          inside = true;
      }
      out.require(inside, cs.name + ": oracle crossing outside the certified intervals");
      ++crossings;
    }
    if (!cs.ledger) continue;
    ConstantsLedger L = compute_ledger(cert);
    for (const auto& chk : L.checks) out.require(chk.verified, cs.name + ": ledger check " + chk.name);
    for (int i = 0; i < 10; ++i) {
      const Interval delta = L.delta1 * Interval(std::pow(10.0, -3.0 * i / 9.0));
      out.require(measure_delta_check(cert, L, delta).hi() <= (L.k1 * delta).lo(), cs.name + ": measure bound");
      ++deltas;
    }
    out.require(check_main0(L, L.c, L.d, L.N, L.k, true, true).all_pass(), cs.name + ": N fails the conditions");
  }
  if (out.pass)
    out.detail << cases.size() << " certified runs, " << samples << " tube samples, " << crossings
               << " crossings, " << deltas << " measure bounds, ledgers and N verified on 3 rows";
}

void criterion_foundations(Outcome& out) {
  struct Fn {
    const char* name;
    double lo, hi;
    bool log_scale;
    std::function<Interval(const Interval&)> f;
    std::function<void(Big&, const Big&)> ref;
  };
  const std::vector<Fn> fns = {
      {"exp", -700, 700, false, [](const Interval& x) { return exp(x); },
       [](Big& o, const Big& x) { mpfr_exp(o.v, x.v, MPFR_RNDN); }},
      {"expm1", -40, 40, false, [](const Interval& x) { return expm1(x); },
       [](Big& o, const Big& x) { mpfr_expm1(o.v, x.v, MPFR_RNDN); }},
      {"log", -1000, 1000, true, [](const Interval& x) { return log(x); },
       [](Big& o, const Big& x) { mpfr_log(o.v, x.v, MPFR_RNDN); }},
      {"log1p", -0.999, 1e6, false, [](const Interval& x) { return log1p(x); },
       [](Big& o, const Big& x) { mpfr_log1p(o.v, x.v, MPFR_RNDN); }},
      {"sqrt", -1000, 1000, true, [](const Interval& x) { return sqrt(x); },
       [](Big& o, const Big& x) { mpfr_sqrt(o.v, x.v, MPFR_RNDN); }},
      {"sin", -100, 100, false, [](const Interval& x) { return sin(x); },
       [](Big& o, const Big& x) { mpfr_sin(o.v, x.v, MPFR_RNDN); }},
      {"cos", -100, 100, false, [](const Interval& x) { return cos(x); },
       [](Big& o, const Big& x) { mpfr_cos(o.v, x.v, MPFR_RNDN); }},
      {"pow 0.5", -500, 500, true, [](const Interval& x) { return pow_real(x, 0.5); },
       [](Big& o, const Big& x) { mpfr_sqrt(o.v, x.v, MPFR_RNDN); }},
      {"pow 2.7", -100, 100, true, [](const Interval& x) { return pow_real(x, 2.7); },
       [](Big& o, const Big& x) {
         Big e(2.7);
         mpfr_pow(o.v, x.v, e.v, MPFR_RNDN);
       }},
  };
  std::mt19937_64 rng(2024);
  Big bx, r;
  for (const Fn& fn : fns) {
    std::uniform_real_distribution<double> u(fn.lo, fn.hi);
    int bad = 0;
    for (int i = 0; i < 10000; ++i) {
      const double x = fn.log_scale ? std::exp2(u(rng)) : u(rng);
      mpfr_set_d(bx.v, x, MPFR_RNDN);
      fn.ref(r, bx);
      if (!encloses(fn.f(Interval(x)), r)) ++bad;
    }
    out.require(bad == 0, std::string(fn.name) + ": " + std::to_string(bad) + " misses");
  }

  // (a + b s)^k has coefficients binom(k, i) a^(k-i) b^i.
  std::uniform_real_distribution<double> ad(0.2, 2.0), bd(-1.0, 1.0);
  for (double k : {1.0, 2.0, 3.0, 0.5}) {
    for (int trial = 0; trial < 100; ++trial) {
      const double a = ad(rng), b = bd(rng);
      Jet u({Interval(a), Interval(b), Interval(0.0), Interval(0.0), Interval(0.0)});
      Jet w = jet_compose_power(u, k, Interval(a));
      Big coef(1.0), ek(k);
      for (int i = 0; i <= 4; ++i) {
        Big term, pa(a), pb(b), e;
        mpfr_set_d(e.v, k - i, MPFR_RNDN);
        mpfr_pow(pa.v, pa.v, e.v, MPFR_RNDN);
        mpfr_pow_ui(pb.v, pb.v, static_cast<unsigned long>(i), MPFR_RNDN);
        mpfr_mul(term.v, coef.v, pa.v, MPFR_RNDN);
        mpfr_mul(term.v, term.v, pb.v, MPFR_RNDN);
        if (!encloses_approx(w[i], term)) {
          out.require(false, "jet coefficient " + std::to_string(i) + " for k = " + std::to_string(k));
          break;
        }
        mpfr_mul_d(coef.v, coef.v, k - i, MPFR_RNDN);
        mpfr_div_ui(coef.v, coef.v, static_cast<unsigned long>(i + 1), MPFR_RNDN);
      }
    }
  }

  // (s - 1)^2 + 1 touches 1 at s = 1.
  ForwardTaylorRep dbl;
  dbl.jet = Jet({Interval(2.0), Interval(-2.0), Interval(1.0)});
  dbl.remainder = Interval(0.0);
  dbl.validity = 2.0;
  out.require(!inewton(dbl).unique(), "inewton claims a unique double root");
  dbl.jet = Jet({Interval(1.999), Interval(-2.0), Interval(1.0)});
  out.require(!inewton(dbl).unique(), "inewton claims a unique root near a double root");
  if (out.pass) out.detail << fns.size() << " functions x 1e4 points, jets to order 4 for k in {1, 2, 3, 0.5}, no "
                           << "unique double root";
}

void criterion_negative(Outcome& out) {
  OrbitParams p;
  p.k = 2.0;
  p.c = Interval(2.0);
  p.d = from_decimal("2.1");
  p.c_text = "2";
  p.d_text = "2.1";
  p.T = 3;
  p.p = 128;
  p.n = 4;
  try {
    verify_property_P(p);
    out.require(false, "a certificate was produced");
  } catch (const ProofFailure& e) {
    out.detail << "ProofFailure [" << e.condition() << "]";
  }
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    void (*run)(Outcome&);
  };
  const Criterion criteria[] = {
      {"table row (2, 2, 20, 3, 128, 4)", criterion_fast_row},
      {"table row (2, 2, 5, 10, 128, 4)", criterion_medium_row},
      {"analytic criterion", criterion_analytic},
      {"soundness suite", criterion_soundness},
      {"interval and jet foundations", criterion_foundations},
      {"negative control (2, 2, 2.1, 3)", criterion_negative},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome out;
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    std::printf("%s  %-34s %s\n", out.pass ? "PASS" : "FAIL", c.name, out.detail.str().c_str());
    std::fflush(stdout);
    if (!out.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
