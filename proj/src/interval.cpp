#include "ddecap/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <string>

namespace ddecap {

namespace rounding {

namespace {

// Below this magnitude FMA residuals may themselves be rounded (subnormal
// range), so the EFT argument no longer holds and we nudge blindly.
constexpr double kTiny = 1e-290;

void check_finite(double x) {
  if (!std::isfinite(x)) throw OverflowError("interval endpoint overflow");
}

}  // namespace

double next_up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }
double next_down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }

// TwoSum: s + e == a + b exactly.
static double two_sum_err(double a, double b, double s) {
  double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}

double add_down(double a, double b) {
  double s = a + b;
  check_finite(s);
  return two_sum_err(a, b, s) < 0.0 ? next_down(s) : s;
}

double add_up(double a, double b) {
  double s = a + b;
  check_finite(s);
  return two_sum_err(a, b, s) > 0.0 ? next_up(s) : s;
}

double sub_down(double a, double b) { return add_down(a, -b); }
double sub_up(double a, double b) { return add_up(a, -b); }

double mul_down(double a, double b) {
  double p = a * b;
  check_finite(p);
  if (a == 0.0 || b == 0.0) return 0.0;
  if (std::fabs(p) < kTiny) return next_down(p);
  return std::fma(a, b, -p) < 0.0 ? next_down(p) : p;
}

double mul_up(double a, double b) {
  double p = a * b;
  check_finite(p);
  if (a == 0.0 || b == 0.0) return 0.0;
  if (std::fabs(p) < kTiny) return next_up(p);
  return std::fma(a, b, -p) > 0.0 ? next_up(p) : p;
}

// a/b = q + r/b with r = a - q*b computed exactly by FMA.
static int div_residual_sign(double a, double b, double q) {
  double r = std::fma(-q, b, a);
  if (r == 0.0) return 0;
  return ((r > 0.0) == (b > 0.0)) ? 1 : -1;
}

double div_down(double a, double b) {
  if (b == 0.0) throw DivisionByZeroInterval("division by zero");
  double q = a / b;
  check_finite(q);
  if (a == 0.0) return 0.0;
  if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return next_down(q);
  return div_residual_sign(a, b, q) < 0 ? next_down(q) : q;
}

double div_up(double a, double b) {
  if (b == 0.0) throw DivisionByZeroInterval("division by zero");
  double q = a / b;
  check_finite(q);
  if (a == 0.0) return 0.0;
  if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return next_up(q);
  return div_residual_sign(a, b, q) > 0 ? next_up(q) : q;
}

static double sqrt_down(double x) {
  if (x <= 0.0) return 0.0;
  double s = std::sqrt(x);
  if (x < kTiny) return next_down(s);
  return std::fma(-s, s, x) < 0.0 ? next_down(s) : s;
}

static double sqrt_up(double x) {
  if (x <= 0.0) return 0.0;
  double s = std::sqrt(x);
  if (x < kTiny) return next_up(s);
  return std::fma(-s, s, x) > 0.0 ? next_up(s) : s;
}

}  // namespace rounding

using namespace rounding;

namespace {

double nudge_down(double x, int ulps) {
  for (int i = 0; i < ulps; ++i) x = next_down(x);
  return x;
}

double nudge_up(double x, int ulps) {
  for (int i = 0; i < ulps; ++i) x = next_up(x);
  return x;
}

// glibc's exp/log/sin/... are within 1 ulp; two ulps of slack covers that.
constexpr int kLibmSlack = 2;

double pow_down_nonneg(double x, unsigned k) {
  double r = 1.0, b = x;
  while (k) {
    if (k & 1u) r = mul_down(r, b);
    k >>= 1;
    if (k) b = mul_down(b, b);
  }
  return r;
}

double pow_up_nonneg(double x, unsigned k) {
  double r = 1.0, b = x;
  while (k) {
    if (k & 1u) r = mul_up(r, b);
    k >>= 1;
    if (k) b = mul_up(b, b);
  }
  return r;
}

}  // namespace

Interval::Interval(double x) : lo_(x), hi_(x) {
  if (std::isnan(x)) throw DomainError("NaN interval endpoint");
  if (!std::isfinite(x)) throw OverflowError("infinite interval endpoint");
}

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (std::isnan(lo) || std::isnan(hi)) throw DomainError("NaN interval endpoint");
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw OverflowError("infinite interval endpoint");
  if (lo > hi) throw DomainError("interval with lo > hi");
}

double Interval::mid() const noexcept {
  if (lo_ == hi_) return lo_;
  double m = 0.5 * lo_ + 0.5 * hi_;
  return std::clamp(m, lo_, hi_);
}

double Interval::diam() const noexcept {
  double s = hi_ - lo_;
  if (!std::isfinite(s)) return std::numeric_limits<double>::max();
  return two_sum_err(hi_, -lo_, s) > 0.0 ? next_up(s) : s;
}

double Interval::mag() const noexcept { return std::max(std::fabs(lo_), std::fabs(hi_)); }

double Interval::mig() const noexcept {
  if (contains_zero()) return 0.0;
  return std::min(std::fabs(lo_), std::fabs(hi_));
}

Interval& Interval::operator+=(const Interval& o) { return *this = *this + o; }
Interval& Interval::operator-=(const Interval& o) { return *this = *this - o; }
Interval& Interval::operator*=(const Interval& o) { return *this = *this * o; }
Interval& Interval::operator/=(const Interval& o) { return *this = *this / o; }

Interval operator-(const Interval& a) { return {-a.hi(), -a.lo()}; }

Interval operator+(const Interval& a, const Interval& b) {
  return {add_down(a.lo(), b.lo()), add_up(a.hi(), b.hi())};
}

Interval operator-(const Interval& a, const Interval& b) {
  return {sub_down(a.lo(), b.hi()), sub_up(a.hi(), b.lo())};
}

Interval operator*(const Interval& a, const Interval& b) {
  const double al = a.lo(), ah = a.hi(), bl = b.lo(), bh = b.hi();
  if (al >= 0.0) {
    if (bl >= 0.0) return {mul_down(al, bl), mul_up(ah, bh)};
    if (bh <= 0.0) return {mul_down(ah, bl), mul_up(al, bh)};
    return {mul_down(ah, bl), mul_up(ah, bh)};
  }
  if (ah <= 0.0) {
    if (bl >= 0.0) return {mul_down(al, bh), mul_up(ah, bl)};
    if (bh <= 0.0) return {mul_down(ah, bh), mul_up(al, bl)};
    return {mul_down(al, bh), mul_up(al, bl)};
  }
  if (bl >= 0.0) return {mul_down(al, bh), mul_up(ah, bh)};
  if (bh <= 0.0) return {mul_down(ah, bl), mul_up(al, bl)};
  return {std::min(mul_down(al, bh), mul_down(ah, bl)),
          std::max(mul_up(al, bl), mul_up(ah, bh))};
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw DivisionByZeroInterval("divisor interval contains zero");
  const double al = a.lo(), ah = a.hi(), bl = b.lo(), bh = b.hi();
  if (bl > 0.0) {
    if (al >= 0.0) return {div_down(al, bh), div_up(ah, bl)};
    if (ah <= 0.0) return {div_down(al, bl), div_up(ah, bh)};
    return {div_down(al, bl), div_up(ah, bl)};
  }
  if (al >= 0.0) return {div_down(ah, bh), div_up(al, bl)};
  if (ah <= 0.0) return {div_down(ah, bl), div_up(al, bh)};
  return {div_down(ah, bh), div_up(al, bh)};
}

Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

std::optional<Interval> intersect(const Interval& a, const Interval& b) {
  double lo = std::max(a.lo(), b.lo());
  double hi = std::min(a.hi(), b.hi());
  if (lo > hi) return std::nullopt;
  return Interval(lo, hi);
}

bool subset(const Interval& a, const Interval& b) { return b.lo() <= a.lo() && a.hi() <= b.hi(); }
bool strict_subset(const Interval& a, const Interval& b) { return b.lo() < a.lo() && a.hi() < b.hi(); }
bool overlaps(const Interval& a, const Interval& b) { return a.lo() <= b.hi() && b.lo() <= a.hi(); }
bool certainly_less(const Interval& a, const Interval& b) { return a.hi() < b.lo(); }
bool certainly_greater(const Interval& a, const Interval& b) { return a.lo() > b.hi(); }

Interval min(const Interval& a, const Interval& b) {
  return {std::min(a.lo(), b.lo()), std::min(a.hi(), b.hi())};
}

Interval max(const Interval& a, const Interval& b) {
  return {std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

Interval abs(const Interval& a) {
  if (a.lo() >= 0.0) return a;
  if (a.hi() <= 0.0) return -a;
  return {0.0, std::max(-a.lo(), a.hi())};
}

Interval sqr(const Interval& x) {
  double m = x.mig(), M = x.mag();
  return {mul_down(m, m), mul_up(M, M)};
}

Interval sqrt(const Interval& x) {
  if (x.lo() < 0.0) throw DomainError("sqrt of interval with negative part");
  return {sqrt_down(x.lo()), sqrt_up(x.hi())};
}

Interval exp(const Interval& x) {
  auto lo_of = [](double v) {
    if (v == 0.0) return 1.0;
    return std::max(0.0, nudge_down(std::exp(v), kLibmSlack));
  };
  auto hi_of = [](double v) {
    if (v == 0.0) return 1.0;
    double e = std::exp(v);
    if (!std::isfinite(e)) throw OverflowError("exp overflow");
    return nudge_up(e, kLibmSlack);
  };
  return {lo_of(x.lo()), hi_of(x.hi())};
}

Interval expm1(const Interval& x) {
  auto lo_of = [](double v) {
    if (v == 0.0) return 0.0;
    return std::max(-1.0, nudge_down(std::expm1(v), kLibmSlack));
  };
  auto hi_of = [](double v) {
    if (v == 0.0) return 0.0;
    double e = std::expm1(v);
    if (!std::isfinite(e)) throw OverflowError("expm1 overflow");
    return nudge_up(e, kLibmSlack);
  };
  return {lo_of(x.lo()), hi_of(x.hi())};
}

Interval log(const Interval& x) {
  if (x.lo() <= 0.0) throw DomainError("log of non-positive interval");
  auto f = [](double v, bool up) {
    if (v == 1.0) return 0.0;
    double l = std::log(v);
    return up ? nudge_up(l, kLibmSlack) : nudge_down(l, kLibmSlack);
  };
  return {f(x.lo(), false), f(x.hi(), true)};
}

Interval log1p(const Interval& x) {
  if (x.lo() <= -1.0) throw DomainError("log1p of interval reaching -1");
  auto f = [](double v, bool up) {
    if (v == 0.0) return 0.0;
    double l = std::log1p(v);
    return up ? nudge_up(l, kLibmSlack) : nudge_down(l, kLibmSlack);
  };
  return {f(x.lo(), false), f(x.hi(), true)};
}

Interval pi() { return {M_PI, next_up(M_PI)}; }

namespace {

// Range of sin(x + shift*pi/2) over x. Critical points are where the shifted
// argument equals pi/2 + n*pi; n even gives +1, n odd gives -1.
Interval trig(const Interval& x, bool cosine) {
  const Interval P = pi();
  if (x.diam() >= 7.0) return {-1.0, 1.0};
  auto f = [cosine](double v) { return cosine ? std::cos(v) : std::sin(v); };
  double a = f(x.lo()), b = f(x.hi());
  double lo = nudge_down(std::min(a, b), kLibmSlack);
  double hi = nudge_up(std::max(a, b), kLibmSlack);
  // Critical points: sin at pi/2 + n*pi, cos at n*pi.
  Interval q = cosine ? x / P : (x - P * Interval(0.5)) / P;
  double n0 = std::floor(q.lo()), n1 = std::ceil(q.hi());
  for (double n = n0; n <= n1; n += 1.0) {
    if (n < q.lo() || n > q.hi()) continue;
    bool even = std::fmod(std::fabs(n), 2.0) == 0.0;
    if (even) hi = 1.0;
    else lo = -1.0;
  }
  return {std::max(lo, -1.0), std::min(hi, 1.0)};
}

}  // namespace

Interval sin(const Interval& x) { return trig(x, false); }
Interval cos(const Interval& x) { return trig(x, true); }

Interval pow(const Interval& x, int k) {
  if (k == 0) return Interval(1.0);
  if (k < 0) return Interval(1.0) / pow(x, -k);
  unsigned u = static_cast<unsigned>(k);
  if (x.lo() >= 0.0) return {pow_down_nonneg(x.lo(), u), pow_up_nonneg(x.hi(), u)};
  if (x.hi() <= 0.0) {
    Interval r = pow(-x, k);
    return (u & 1u) ? -r : r;
  }
  if (u & 1u) return {-pow_up_nonneg(-x.lo(), u), pow_up_nonneg(x.hi(), u)};
  return {0.0, pow_up_nonneg(x.mag(), u)};
}

Interval pow_real(const Interval& x, double k) {
  if (std::isnan(k) || !std::isfinite(k)) throw DomainError("non-finite exponent");
  if (k == std::trunc(k) && std::fabs(k) < 1e9) return pow(x, static_cast<int>(k));
  if (x.lo() < 0.0 || (k < 0.0 && x.lo() <= 0.0))
    throw DomainError("pow_real with non-integer exponent needs a positive base");
  double twice = 2.0 * k;
  if (twice == std::trunc(twice) && std::fabs(k) < 1e9) {
    int m = static_cast<int>(std::floor(k));
    auto f = [m](double v) { return pow(Interval(v), m) * sqrt(Interval(v)); };
    if (k < 0.0) return {f(x.hi()).lo(), f(x.lo()).hi()};
    return {f(x.lo()).lo(), f(x.hi()).hi()};
  }
  // x^k is monotone on (0, inf); evaluate endpoints with libm slack.
  auto f = [k](double v, bool up) {
    if (v == 0.0) return 0.0;
    if (v == 1.0) return 1.0;
    double r = std::pow(v, k);
    if (!std::isfinite(r)) throw OverflowError("pow overflow");
    return up ? nudge_up(r, kLibmSlack) : std::max(0.0, nudge_down(r, kLibmSlack));
  };
  if (k > 0.0) return {f(x.lo(), false), f(x.hi(), true)};
  return {f(x.hi(), false), f(x.lo(), true)};
}

// ---------------------------------------------------------------------------
// Text forms

std::pair<std::string, std::string> to_hex(const Interval& x) {
  char a[64], b[64];
  std::snprintf(a, sizeof a, "%a", x.lo());
  std::snprintf(b, sizeof b, "%a", x.hi());
  return {a, b};
}

static double parse_hex_double(const std::string& s) {
  const char* begin = s.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (s.empty() || end != begin + s.size()) throw DomainError("malformed hex float: " + s);
  return v;
}

Interval from_hex(const std::string& lo, const std::string& hi) {
  return {parse_hex_double(lo), parse_hex_double(hi)};
}

namespace {

// Decimal value 0.d1d2d3... * 10^exp10 with no leading or trailing zeros in
// digits; zero has empty digits.
struct Decimal {
  bool neg = false;
  std::string digits;
  int exp10 = 0;
};

void normalize(Decimal& d) {
  size_t first = d.digits.find_first_not_of('0');
  if (first == std::string::npos) {
    d.digits.clear();
    d.exp10 = 0;
    d.neg = false;
    return;
  }
  d.digits.erase(0, first);
  d.exp10 -= static_cast<int>(first);
  d.digits.erase(d.digits.find_last_not_of('0') + 1);
}

// Exact decimal expansion of a finite double.
Decimal exact_decimal(double x) {
  Decimal d;
  if (x == 0.0) return d;
  std::string buf(1100, '\0');
  int n = std::snprintf(buf.data(), buf.size(), "%.800e", x);
  buf.resize(static_cast<size_t>(n));
  size_t pos = 0;
  if (buf[0] == '-') {
    d.neg = true;
    pos = 1;
  }
  size_t epos = buf.find('e');
  std::string mant = buf.substr(pos, epos - pos);
  int e = std::atoi(buf.c_str() + epos + 1);
  mant.erase(std::remove(mant.begin(), mant.end(), '.'), mant.end());
  d.digits = mant;
  d.exp10 = e + 1;
  normalize(d);
  return d;
}

bool parse_decimal(const std::string& text, Decimal& out) {
  Decimal d;
  size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    d.neg = text[i] == '-';
    ++i;
  }
  int int_digits = 0;
  bool seen_dot = false, any = false;
  for (; i < text.size(); ++i) {
    char ch = text[i];
    if (ch >= '0' && ch <= '9') {
      d.digits.push_back(ch);
      if (!seen_dot) ++int_digits;
      any = true;
    } else if (ch == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!any) return false;
  int e = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    size_t used = 0;
    try {
      e = std::stoi(text.substr(i), &used);
    } catch (...) {
      return false;
    }
    i += used;
  }
  if (i != text.size()) return false;
  d.exp10 = int_digits + e;
  normalize(d);
  out = d;
  return true;
}

// Compares |a| with |b|.
int compare_magnitude(const Decimal& a, const Decimal& b) {
  if (a.digits.empty() || b.digits.empty()) {
    if (a.digits.empty() && b.digits.empty()) return 0;
    return a.digits.empty() ? -1 : 1;
  }
  if (a.exp10 != b.exp10) return a.exp10 < b.exp10 ? -1 : 1;
  size_t n = std::max(a.digits.size(), b.digits.size());
  for (size_t i = 0; i < n; ++i) {
    char ca = i < a.digits.size() ? a.digits[i] : '0';
    char cb = i < b.digits.size() ? b.digits[i] : '0';
    if (ca != cb) return ca < cb ? -1 : 1;
  }
  return 0;
}

int compare(const Decimal& a, const Decimal& b) {
  bool az = a.digits.empty(), bz = b.digits.empty();
  if (az && bz) return 0;
  bool an = !az && a.neg, bn = !bz && b.neg;
  if (an != bn) return an ? -1 : 1;
  int m = compare_magnitude(a, b);
  return an ? -m : m;
}

// Rounds to `sig` significant digits, toward +inf if up else toward -inf.
// Returns digits of length exactly sig (zero-padded) and exponent.
Decimal round_directed(const Decimal& x, int sig, bool up) {
  Decimal r = x;
  if (x.digits.empty()) {
    r.digits.assign(static_cast<size_t>(sig), '0');
    r.exp10 = 1;
    return r;
  }
  bool inexact = static_cast<int>(x.digits.size()) > sig;
  r.digits = x.digits.substr(0, std::min<size_t>(x.digits.size(), static_cast<size_t>(sig)));
  r.digits.resize(static_cast<size_t>(sig), '0');
  // Truncation moves toward zero; magnitude must grow when rounding away.
  bool away = inexact && (up != x.neg);
  if (away) {
    int i = sig - 1;
    while (i >= 0 && r.digits[static_cast<size_t>(i)] == '9') r.digits[static_cast<size_t>(i--)] = '0';
    if (i < 0) {
      r.digits.insert(r.digits.begin(), '1');
      r.digits.pop_back();
      ++r.exp10;
    } else {
      ++r.digits[static_cast<size_t>(i)];
    }
  }
  return r;
}

// Positional rendering of a rounded decimal when the exponent is moderate,
// scientific otherwise.
std::string render(const Decimal& d) {
  std::string s = d.neg ? "-" : "";
  int e = d.exp10;
  const std::string& g = d.digits;
  int n = static_cast<int>(g.size());
  if (e >= -4 && e <= 17) {
    if (e <= 0) {
      s += "0.";
      s.append(static_cast<size_t>(-e), '0');
      s += g;
    } else if (e >= n) {
      s += g;
      s.append(static_cast<size_t>(e - n), '0');
    } else {
      s += g.substr(0, static_cast<size_t>(e));
      s += '.';
      s += g.substr(static_cast<size_t>(e));
    }
    return s;
  }
  s += g.substr(0, 1);
  if (n > 1) s += "." + g.substr(1);
  s += "e" + std::to_string(e - 1);
  return s;
}

}  // namespace

std::string to_decimal_pair(const Interval& x, int significant_digits) {
  Decimal lo = round_directed(exact_decimal(x.lo()), significant_digits, false);
  Decimal hi = round_directed(exact_decimal(x.hi()), significant_digits, true);
  return "[" + render(lo) + ", " + render(hi) + "]";
}

std::string to_decimal(const Interval& x, int significant_digits) {
  Decimal elo = exact_decimal(x.lo()), ehi = exact_decimal(x.hi());
  if (x.is_point() && static_cast<int>(elo.digits.size()) <= significant_digits)
    return render(elo);
  std::string a = render(round_directed(elo, significant_digits, false));
  std::string b = render(round_directed(ehi, significant_digits, true));
  if (a == b) return a;
  bool scientific = a.find('e') != std::string::npos || b.find('e') != std::string::npos;
  size_t k = 0;
  while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
  if (scientific || k == 0 || k == a.size() || k == b.size()) return "[" + a + ", " + b + "]";
  // Do not split inside a sign or directly after it.
  if (a[k - 1] == '-') return "[" + a + ", " + b + "]";
  return a.substr(0, k) + "_" + a.substr(k) + "^" + b.substr(k);
}

Interval from_decimal(const std::string& text) {
  Decimal target;
  if (!parse_decimal(text, target)) throw DomainError("malformed decimal: " + text);
  double v = std::strtod(text.c_str(), nullptr);
  if (!std::isfinite(v)) throw OverflowError("decimal out of range: " + text);
  int cmp = compare(target, exact_decimal(v));
  if (cmp == 0) return Interval(v);
  if (cmp < 0) return {next_down(v), v};
  return {v, next_up(v)};
}

std::ostream& operator<<(std::ostream& os, const Interval& x) { return os << to_decimal_pair(x); }

}  // namespace ddecap
