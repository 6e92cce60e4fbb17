#pragma once

#include <string>
#include <vector>

#include "ddecap/grid.hpp"
#include "ddecap/interval.hpp"

namespace ddecap {

struct LedgerCheck {
  std::string name;
  bool verified = false;
};

// Constants attached to a certified periodic solution p of the limiting
// equation. Point-valued choices (kappa1, kappa2, delta0, delta1, mu, gamma,
// eps0, epsilon) are stored as point intervals; derived quantities carry
// their enclosures.
struct ConstantsLedger {
  double k = 0.0;
  Interval c, d, omega_p, L;

  Interval xi0, p_m, p_M, kappa1, kappa2;
  int m = 0;
  int k0 = 0;
  Interval delta0, delta1, mu, g_prime_norm, k1, k2, delta2, gamma;
  Interval eps0, eps1, sigma0, sigma1;
  Interval epsilon;
  Interval K0;
  double N = 0.0;  // integral value

  std::vector<LedgerCheck> checks;
};

// Builds the ledger from a certificate carrying its full tube. Throws
// LedgerInfeasible naming the first constant that cannot be verified.
ConstantsLedger compute_ledger(const OrbitCertificate& cert);

// Upper bound on the measure of {t in [0, m] : |r(t) - 1| < delta} with
// r(t) = p(t - sigma1).
Interval measure_delta_check(const OrbitCertificate& cert, const ConstantsLedger& ledger, const Interval& delta);

// Threshold on |a - c|, |b - d| and the distance between f and g.
// Throws EpsilonVanishes if nothing above 1e-300 verifies.
Interval compute_epsilon(const ConstantsLedger& ledger, const Interval& c, const Interval& d);

// Smallest n >= k, past the maximum of the polynomial-over-exponential
// term, for which the three prototype inequalities verify.
double compute_N(const ConstantsLedger& ledger, double k);

struct NThresholdChecks {
  bool n1 = false, n2 = false, n3 = false;
  bool all() const { return n1 && n2 && n3; }
};
NThresholdChecks check_N_inequalities(const ConstantsLedger& ledger, double k, double n);

// Sup norms for the prototype f_n(xi) = xi^k / (1 + xi^n). hi may be
// +infinity.
Interval prototype_f(const Interval& xi, double k, double n);
Interval prototype_f_prime(const Interval& xi, double k, double n);
double sup_f(double a, double b, double k, double n);
double sup_f_prime(double a, double b, double k, double n);

struct Main0Entry {
  std::string name;
  Interval lhs;  // must be certainly below rhs
  Interval rhs;
  bool pass = false;
};

struct Main0Report {
  std::vector<Main0Entry> entries;  // (i), (ii), (iii), (iv), (iv-inf), (v)
  bool all_pass() const;            // (i)-(v), using the bounded (iv)
  bool strong_iv() const;           // the [1+eps0, inf) variant
};

// a_is_c / b_is_d state that a (b) denotes the same real number as c (d),
// so the distance is exactly zero rather than the enclosure width.
Main0Report check_main0(const ConstantsLedger& ledger, const Interval& a, const Interval& b, double n, double k,
                        bool a_is_c = false, bool b_is_d = false);

std::string format_ledger(const ConstantsLedger& ledger);
std::string format_main0(const Main0Report& report);

}  // namespace ddecap
