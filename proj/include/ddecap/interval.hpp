#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "ddecap/errors.hpp"

namespace ddecap {

// Closed interval [lo, hi] with binary64 endpoints.
//
// Outward rounding is done without touching the FPU rounding mode: every
// basic operation is evaluated in round-to-nearest and the exact rounding
// error is recovered with an error-free transformation (TwoSum, FMA
// residuals). The endpoint is moved one ulp outward only when the error has
// the wrong sign, so exactly representable results stay exact. Library
// transcendentals are not correctly rounded and get a fixed 2-ulp nudge.
//
// Endpoints are always finite; an operation that would overflow throws
// OverflowError instead of producing an infinite endpoint.
class Interval {
 public:
  constexpr Interval() noexcept = default;
  Interval(double x);  // NOLINT: point intervals convert implicitly
  Interval(double lo, double hi);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

  // Midpoint rounded to nearest; always lies inside the interval.
  double mid() const noexcept;
  // Upper bound on hi - lo.
  double diam() const noexcept;
  // Upper bound on max(|lo|, |hi|).
  double mag() const noexcept;
  // Lower bound on min |x| over the interval.
  double mig() const noexcept;

  bool is_point() const noexcept { return lo_ == hi_; }
  bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }
  bool contains_zero() const noexcept { return lo_ <= 0.0 && 0.0 <= hi_; }
  bool positive() const noexcept { return lo_ > 0.0; }
  bool negative() const noexcept { return hi_ < 0.0; }

  Interval& operator+=(const Interval& o);
  Interval& operator-=(const Interval& o);
  Interval& operator*=(const Interval& o);
  Interval& operator/=(const Interval& o);

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

Interval operator-(const Interval& a);
Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);

// Lattice operations.
Interval hull(const Interval& a, const Interval& b);
std::optional<Interval> intersect(const Interval& a, const Interval& b);
bool subset(const Interval& a, const Interval& b);         // a ⊆ b
bool strict_subset(const Interval& a, const Interval& b);  // a ⊆ interior(b)
bool overlaps(const Interval& a, const Interval& b);
bool certainly_less(const Interval& a, const Interval& b);     // a.hi < b.lo
bool certainly_greater(const Interval& a, const Interval& b);  // a.lo > b.hi

Interval min(const Interval& a, const Interval& b);
Interval max(const Interval& a, const Interval& b);
Interval abs(const Interval& a);

// Elementary functions. All return enclosures of the exact image.
Interval sqr(const Interval& x);
Interval sqrt(const Interval& x);
Interval exp(const Interval& x);
Interval expm1(const Interval& x);
Interval log(const Interval& x);
Interval log1p(const Interval& x);
Interval sin(const Interval& x);
Interval cos(const Interval& x);
Interval pow(const Interval& x, int k);
// x^k for real k. Integer and half-integer exponents take dedicated paths.
Interval pow_real(const Interval& x, double k);
Interval pi();

// Directed-rounding scalar helpers, exposed for code that builds bounds
// from plain doubles.
namespace rounding {
double add_down(double a, double b);
double add_up(double a, double b);
double sub_down(double a, double b);
double sub_up(double a, double b);
double mul_down(double a, double b);
double mul_up(double a, double b);
double div_down(double a, double b);
double div_up(double a, double b);
double next_up(double x);
double next_down(double x);
}  // namespace rounding

// Bit-exact text form: two lowercase C99 hex-float literals.
std::pair<std::string, std::string> to_hex(const Interval& x);
Interval from_hex(const std::string& lo, const std::string& hi);

// Outward-rounded decimal rendering. A nondegenerate interval is written as
// the shared leading digits followed by "_" + lower tail and "^" + upper tail,
// e.g. [2.24757628868803, 2.24757629130349] -> "2.2475762_8868803^9130349".
std::string to_decimal(const Interval& x, int significant_digits = 15);
// Plain "[lo, hi]" with each endpoint rounded outward.
std::string to_decimal_pair(const Interval& x, int significant_digits = 17);

// Parses a decimal literal into the tightest enclosing interval.
Interval from_decimal(const std::string& text);

std::ostream& operator<<(std::ostream& os, const Interval& x);

}  // namespace ddecap
