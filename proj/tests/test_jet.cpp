#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "ddecap/jet.hpp"
#include "mp_oracle.hpp"

using namespace ddecap;

namespace {

// Jet of e^{-c s}: c_i = (-c)^i / i!, with the order-(n+1) coefficient over
// [0, v] enclosed by its value range.
ForwardTaylorRep exp_rep(double c, int order, double v) {
  ForwardTaylorRep r;
  r.jet = decay_jet(Interval(1.0), Interval(c), order);
  Jet next = decay_jet(Interval(1.0), Interval(c), order + 1);
  Interval top = next[static_cast<size_t>(order + 1)];
  r.remainder = hull(top, top * exp(Interval(-c * v)));
  r.validity = v;
  return r;
}

// Truncated power series of u^k about s = 0 from the binomial series
// u0^k (1 + v)^k = u0^k sum_m binom(k, m) v^m, v = (u - u0) / u0.
void binomial_series(const std::vector<double>& u, double k, std::vector<Big>& out) {
  const size_t n = u.size();
  std::vector<Big> v(n), term(n), tmp(n);
  for (size_t i = 0; i < n; ++i) {
    mpfr_set_d(v[i].v, i == 0 ? 0.0 : u[i], MPFR_RNDN);
    mpfr_div_d(v[i].v, v[i].v, u[0], MPFR_RNDN);
    mpfr_set_ui(out[i].v, 0, MPFR_RNDN);
    mpfr_set_ui(term[i].v, i == 0 ? 1 : 0, MPFR_RNDN);
  }
  Big coef(1.0);
  for (size_t m = 0; m < n; ++m) {
    for (size_t i = 0; i < n; ++i) {
      Big t;
      mpfr_mul(t.v, term[i].v, coef.v, MPFR_RNDN);
      mpfr_add(out[i].v, out[i].v, t.v, MPFR_RNDN);
    }
    // term <- term * v (truncated), coef <- coef (k - m) / (m + 1)
    for (size_t i = 0; i < n; ++i) mpfr_set_ui(tmp[i].v, 0, MPFR_RNDN);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 1; i + j < n; ++j) {
        Big t;
        mpfr_mul(t.v, term[i].v, v[j].v, MPFR_RNDN);
        mpfr_add(tmp[i + j].v, tmp[i + j].v, t.v, MPFR_RNDN);
      }
    for (size_t i = 0; i < n; ++i) mpfr_set(term[i].v, tmp[i].v, MPFR_RNDN);
    mpfr_mul_d(coef.v, coef.v, k - static_cast<double>(m), MPFR_RNDN);
    mpfr_div_ui(coef.v, coef.v, static_cast<unsigned long>(m + 1), MPFR_RNDN);
  }
  Big base(u[0]), ek(k), scale;
  mpfr_pow(scale.v, base.v, ek.v, MPFR_RNDN);
  for (size_t i = 0; i < n; ++i) mpfr_mul(out[i].v, out[i].v, scale.v, MPFR_RNDN);
}

Jet point_jet(const std::vector<double>& u) {
  Jet j;
  for (double x : u) j.c.emplace_back(x);
  return j;
}

}  // namespace

TEST_CASE("jet_eval examples") {
  ForwardTaylorRep e2 = exp_rep(2.0, 4, 0.2);
  CHECK(jet_eval(e2, Interval(0.0)).contains(1.0));

  ForwardTaylorRep lin;
  lin.jet = point_jet({2.0, -1.0});
  lin.remainder = Interval(0.0);
  lin.validity = 1.0;
  CHECK(jet_eval(lin, Interval(1.0)).contains(1.0));

  Interval v = jet_eval(e2, Interval(0.1));
  Big ref(-0.2);
  mpfr_exp(ref.v, ref.v, MPFR_RNDN);
  CHECK(encloses(v, ref));
  CHECK(v.diam() < 1e-5);

  CHECK_THROWS_AS(jet_eval(e2, Interval(0.1, 0.3)), OutOfValidity);
  CHECK_THROWS_AS(jet_eval(e2, Interval(-0.1)), OutOfValidity);
}

TEST_CASE("jet_compose_power examples") {
  Jet w = jet_compose_power(point_jet({1, 1, 0}), 2.0, Interval(1.0));
  CHECK(w[0].contains(1.0));
  CHECK(w[1].contains(2.0));
  CHECK(w[2].contains(1.0));

  w = jet_compose_power(point_jet({4, 0, 0}), 0.5, Interval(4.0));
  CHECK(w[0].contains(2.0));
  CHECK(w[1].contains(0.0));
  CHECK(w[2].contains(0.0));

  w = jet_compose_power(point_jet({1, -2, 2}), 0.5, Interval(1.0));
  CHECK(w[0].contains(1.0));
  CHECK(w[1].contains(-1.0));
  CHECK(w[2].contains(0.5));

  CHECK_THROWS_AS(jet_compose_power(point_jet({0, 1, 0}), 0.5, Interval(0.0)), PositivityLost);
  CHECK_THROWS_AS(jet_compose_power(point_jet({0.5, 1, 0}), 1.5, Interval(-0.1, 0.5)), PositivityLost);
  // Integer powers need no positivity.
  CHECK_NOTHROW(jet_compose_power(point_jet({0, 1, 0}), 2.0, Interval(0.0)));
}

TEST_CASE("dde_jet_advance examples") {
  Jet x = dde_jet_advance(Field::Decay, Interval(1.0), Jet{}, Interval(2.0), Interval(20.0), 2.0, 3);
  REQUIRE(x.order() == 3);
  CHECK(x[0].contains(1.0));
  CHECK(x[1].contains(-2.0));
  CHECK(x[2].contains(2.0));
  CHECK(x[3].contains(-4.0 / 3.0));

  Jet past = point_jet({1, -2, 2});
  x = dde_jet_advance(Field::Smooth, Interval(1.0), past, Interval(2.0), Interval(20.0), 2.0, 3);
  CHECK(x[1].contains(18.0));
  // x2 = (-c x1 + d w1) / 2 with w = e^{-4s}: (-36 - 80) / 2.
  CHECK(x[2].contains(-58.0));

  CHECK_THROWS_AS(
      dde_jet_advance(Field::Smooth, Interval(1.0), point_jet({0, 1, 0}), Interval(2.0), Interval(20.0), 0.5, 3),
      PositivityLost);
}

TEST_CASE("power and solution recurrences against the binomial series to order 4") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u0d(0.2, 1.0), ud(-2.0, 2.0), cd(1.0, 5.0);
  for (double k : {1.0, 2.0, 3.0, 0.5}) {
    CAPTURE(k);
    for (int trial = 0; trial < 200; ++trial) {
      const int order = 1 + trial % 4;
      std::vector<double> u{u0d(rng)};
      for (int i = 1; i <= order; ++i) u.push_back(ud(rng));
      std::vector<Big> ref(u.size());
      binomial_series(u, k, ref);

      Jet w = jet_compose_power(point_jet(u), k, Interval(u[0]));
      REQUIRE(w.order() == order);
      for (int i = 0; i <= order; ++i) CHECK(encloses_approx(w[i], ref[i]));

      // Solution jet x_{i+1} = (-c x_i + d w_i) / (i + 1).
      const double c = cd(rng), d = c + 1 + 4 * cd(rng);
      const double x0 = u0d(rng);
      Jet x = dde_jet_advance(Field::Smooth, Interval(x0), point_jet(u), Interval(c), Interval(d), k, order + 1);
      Big xi(x0);
      CHECK(encloses_approx(x[0], xi));
      for (int i = 0; i <= order; ++i) {
        Big t;
        mpfr_mul_d(t.v, xi.v, -c, MPFR_RNDN);
        Big dw;
        mpfr_mul_d(dw.v, ref[i].v, d, MPFR_RNDN);
        mpfr_add(t.v, t.v, dw.v, MPFR_RNDN);
        mpfr_div_ui(xi.v, t.v, static_cast<unsigned long>(i + 1), MPFR_RNDN);
        CHECK(encloses_approx(x[i + 1], xi));
      }
    }
  }
}

TEST_CASE("decay jets are tight") {
  for (double c : {0.5, 1.0, 2.0, 2.5, 3.0229989}) {
    Jet j = decay_jet(Interval(1.0), Interval(c), 8);
    Big term(1.0);
    for (int i = 0; i <= 8; ++i) {
      CHECK(encloses(j[i], term));
      CHECK(j[i].diam() <= 4 * ulp(term.to_double()));
      mpfr_mul_d(term.v, term.v, -c, MPFR_RNDN);
      mpfr_div_ui(term.v, term.v, static_cast<unsigned long>(i + 1), MPFR_RNDN);
    }
  }
}

TEST_CASE("inclusion monotonicity of the jet operations") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u0d(0.3, 1.0), ud(-1.0, 1.0), wd(0.0, 1e-3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> u{u0d(rng), ud(rng), ud(rng), ud(rng)};
    Jet narrow = point_jet(u), wide;
    for (double x : u) {
      double w = wd(rng);
      wide.c.emplace_back(x - w, x + w);
    }
    for (double k : {2.0, 0.5}) {
      Jet a = jet_compose_power(narrow, k, narrow[0]);
      Jet b = jet_compose_power(wide, k, wide[0]);
      for (int i = 0; i <= 3; ++i) CHECK(subset(a[i], b[i]));
      Jet xa = dde_jet_advance(Field::Smooth, Interval(0.5), narrow, Interval(2.0), Interval(20.0), k, 4);
      Jet xb = dde_jet_advance(Field::Smooth, Interval(0.5 - 1e-4, 0.5 + 1e-4), wide, Interval(2.0 - 1e-4, 2.0),
                               Interval(20.0), k, 4);
      for (int i = 0; i <= 4; ++i) CHECK(subset(xa[i], xb[i]));
    }
  }
}

TEST_CASE("derivative, taylor_shift and multiplication") {
  ForwardTaylorRep e2 = exp_rep(2.0, 4, 0.25);
  ForwardTaylorRep de = derivative(e2);
  CHECK(de.order() == 3);
  Big ref(-0.2);
  mpfr_exp(ref.v, ref.v, MPFR_RNDN);
  Big dref;
  mpfr_mul_si(dref.v, ref.v, -2, MPFR_RNDN);
  CHECK(encloses(jet_eval(de, Interval(0.1)), dref));

  ForwardTaylorRep konst;
  konst.jet = point_jet({5.0});
  konst.remainder = Interval(0.0);
  konst.validity = 1.0;
  CHECK_THROWS_AS(derivative(konst), OrderTooLow);

  Jet shifted = taylor_shift(e2, Interval(0.1));
  Big term;
  mpfr_set(term.v, ref.v, MPFR_RNDN);
  for (int i = 0; i <= 4; ++i) {
    CHECK(encloses(shifted[i], term));
    mpfr_mul_si(term.v, term.v, -2, MPFR_RNDN);
    mpfr_div_ui(term.v, term.v, static_cast<unsigned long>(i + 1), MPFR_RNDN);
  }

  Jet sq = jet_multiply(point_jet({1, 1, 0}), point_jet({1, 1, 0}));
  CHECK(sq[0].contains(1.0));
  CHECK(sq[1].contains(2.0));
  CHECK(sq[2].contains(1.0));
  CHECK(binomial(4, 2) == 6.0);
}
