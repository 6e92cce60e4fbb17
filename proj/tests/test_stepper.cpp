#include <cmath>
#include <random>

#include "doctest.h"
#include "ddecap/grid.hpp"
#include "ddecap/stepper.hpp"
#include "mp_oracle.hpp"

using namespace ddecap;

namespace {

Big exp_of(double x) {
  Big r(x);
  mpfr_exp(r.v, r.v, MPFR_RNDN);
  return r;
}

StepConfig decay_cfg(double c, int order = 4) {
  StepConfig cfg;
  cfg.field = Field::Decay;
  cfg.c = Interval(c);
  cfg.order = order;
  return cfg;
}

StepConfig smooth_cfg(double k, double c, double d, int order = 4) {
  StepConfig cfg;
  cfg.field = Field::Smooth;
  cfg.k = k;
  cfg.c = Interval(c);
  cfg.d = Interval(d);
  cfg.order = order;
  return cfg;
}

}  // namespace

TEST_CASE("decay step from a point head") {
  FSetGrid x = make_initial_fset(Interval(2.0), 128, 4);
  x.head = Interval(1.0);
  FSetGrid y = step_full(decay_cfg(2.0), x);
  CHECK(encloses(y.head, exp_of(-2.0 / 128)));
  CHECK(y.head.diam() <= 1e-12);
  CHECK(y.slots.size() == x.slots.size());

  FSetGrid half = step_partial(decay_cfg(2.0), x, Interval(0.5 / 128));
  CHECK(encloses(half.head, exp_of(-1.0 / 128)));

  FSetGrid full = propagate(decay_cfg(2.0), x, 128, Interval(0.0));
  CHECK(encloses(full.head, exp_of(-2.0)));
}

TEST_CASE("zero steps and zero partial step leave the set in place") {
  FSetGrid x = make_initial_fset(Interval(2.0), 32, 4);
  StepConfig cfg = smooth_cfg(2.0, 2.0, 20.0);
  FSetGrid same = propagate(cfg, x, 0, Interval(0.0));
  CHECK(subset(x.head, same.head));
  FSetGrid id = step_partial(cfg, x, Interval(0.0));
  CHECK(subset(x.head, id.head));
  for (int i = 0; i < 32; ++i) {
    Interval s(-1.0 + (i + 0.5) / 32);
    CHECK(subset(eval(x, s), eval(id, s)));
  }
}

TEST_CASE("smooth step against the closed-form first delay") {
  const double k = 2.0, c = 2.0, d = 20.0;
  FSetGrid x = make_initial_fset(Interval(c), 128, 4);
  FSetGrid y = step_full(smooth_cfg(k, c, d), x);
  Big ref;
  first_delay_solution(k, c, d, 1.0 / 128, ref);
  CHECK(encloses(y.head, ref));

  FSetGrid z = propagate(smooth_cfg(k, c, d), x, 128, Interval(0.0));
  first_delay_solution(k, c, d, 1.0, ref);
  CHECK(encloses(z.head, ref));
  CHECK(z.head.diam() < 1e-8);
}

TEST_CASE("uncertain partial step") {
  const double h = 1.0 / 128;
  FSetGrid x = make_initial_fset(Interval(2.0), 128, 4);
  StepConfig cfg = smooth_cfg(2.0, 2.0, 20.0);
  FSetGrid y = step_partial(cfg, x, Interval(h / 2 - 5e-11, h / 2 + 5e-11));
  // Lipschitz bound of the field on the reachable range: c (d / c + 1).
  CHECK(y.head.diam() <= x.head.diam() + 2.0 * (20.0 / 2.0 + 1.0) * 1e-10 + 1e-12);
  CHECK(y.head.diam() <= x.head.diam() + 1e-8);
  Big lo, hi;
  first_delay_solution(2.0, 2.0, 20.0, h / 2 - 5e-11, lo);
  first_delay_solution(2.0, 2.0, 20.0, h / 2 + 5e-11, hi);
  CHECK(encloses(y.head, lo));
  CHECK(encloses(y.head, hi));
}

TEST_CASE("widening the input widens the output") {
  FSetGrid x = make_initial_fset(Interval(2.0), 32, 4);
  FSetGrid wide = x;
  wide.head = Interval(x.head.lo() - 1e-6, x.head.hi() + 1e-6);
  for (auto& s : wide.slots) s.jet[0] = Interval(s.jet[0].lo() - 1e-6, s.jet[0].hi() + 1e-6);
  for (double k : {2.0, 0.5}) {
    StepConfig cfg = smooth_cfg(k, 2.0, 20.0);
    FSetGrid a = step_full(cfg, x), b = step_full(cfg, wide);
    CHECK(subset(a.head, b.head));
    CHECK(b.head.diam() >= a.head.diam());
  }
}

TEST_CASE("one full delay contains the exact solution for random parameters") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> cd(1.0, 5.0), u(0.0, 1.0);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const double k = trial % 2 ? 0.5 : 2.0;
    const double c = cd(rng);
    const double d = (c + 1.0) + u(rng) * (5.0 * c - (c + 1.0));
    CAPTURE(k);
    CAPTURE(c);
    CAPTURE(d);
    FSetGrid x = make_initial_fset(Interval(c), 32, 4);
    FSetGrid y = propagate(smooth_cfg(k, c, d), x, 32, Interval(0.0));
    for (int i = 0; i < 32; ++i) {
      double s = -1.0 + (i + u(rng)) / 32.0;  // local time on [1, 2]
      Big ref;
      first_delay_solution(k, c, d, s + 1.0, ref);
      CHECK(encloses(eval(y, Interval(s)), ref));
      ++checked;
    }
    Big end;
    first_delay_solution(k, c, d, 1.0, end);
    CHECK(encloses(y.head, end));
  }
  CHECK(checked == 3200);
}

TEST_CASE("exact decay segments") {
  const double h = 1.0 / 64;
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> len(0.05, 1.0), cd(0.5, 4.0), zd(0.1, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double c = cd(rng), z = zd(rng), L = len(rng);
    Interval end;
    Segment seg = shift_decay(decay_cfg(c), Interval(-1.0), Interval(-1.0 + L), Interval(L), h, Interval(z), end);
    Big ref(-c);
    mpfr_mul_d(ref.v, ref.v, L, MPFR_RNDN);
    mpfr_exp(ref.v, ref.v, MPFR_RNDN);
    mpfr_mul_d(ref.v, ref.v, z, MPFR_RNDN);
    CHECK(encloses(end, ref));
    CHECK(end.diam() <= 10 * ulp(ref.to_double()));
    const double tm = -1.0 + L / 2;
    Interval mid = eval(seg, Interval(tm));
    Big mref(-c);
    mpfr_mul_d(mref.v, mref.v, tm + 1.0, MPFR_RNDN);  // tm + 1 is exact
    mpfr_exp(mref.v, mref.v, MPFR_RNDN);
    mpfr_mul_d(mref.v, mref.v, z, MPFR_RNDN);
    CHECK(encloses(mid, mref));
  }
}

TEST_CASE("configuration validation") {
  StepConfig bad = smooth_cfg(2.0, 2.0, 20.0);
  bad.c = Interval(-1.0, 1.0);
  CHECK_THROWS_AS(validate(bad), DomainError);
  bad = smooth_cfg(2.0, 2.0, 20.0);
  bad.order = 0;
  CHECK_THROWS_AS(validate(bad), OrderTooLow);
  bad = smooth_cfg(2.0, 2.0, 20.0);
  bad.enclosure_inflation = 1.0;
  CHECK_THROWS_AS(validate(bad), DomainError);
  StepConfig decay = decay_cfg(2.0);
  decay.d = Interval(0.0);
  CHECK_NOTHROW(validate(decay));
}

TEST_CASE("a non-integer power needs a positive past") {
  FSetGrid x = make_initial_fset(Interval(2.0), 16, 3);
  for (auto& s : x.slots) s.jet[0] = Interval(-0.1, s.jet[0].hi());
  CHECK_THROWS(step_full(smooth_cfg(0.5, 2.0, 20.0), x));
}
