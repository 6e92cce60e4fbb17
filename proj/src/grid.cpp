#include "ddecap/grid.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace ddecap {

const char* to_string(Branch b) { return b == Branch::Above ? "above" : "below"; }

Interval Piece::length() const {
  Interval sum(0.0);
  for (const auto& s : segments) sum += s.length;
  if (auto i = intersect(sum, end() - start())) return *i;
  return sum;
}

std::vector<Interval> SolRep::cut_points() const {
  std::vector<Interval> out;
  for (const auto& piece : pieces)
    for (const auto& seg : piece.segments) out.push_back(seg.start);
  return out;
}

int slot_count(double length_hi, double h) {
  if (!(length_hi > 0.0)) throw OutOfDomain("segment length must be positive");
  int m = std::max(1, static_cast<int>(std::ceil(length_hi / h)));
  while (m > 1 && (m - 1) * h >= length_hi) --m;
  while (m * h < length_hi) ++m;
  return m;
}

double last_validity(double length_hi, double h, int m) {
  double v = rounding::sub_up(length_hi, (m - 1) * h);
  return std::min(v, h);
}

namespace {

double coverage(const std::vector<ForwardTaylorRep>& slots, double h) {
  return rounding::add_up((static_cast<double>(slots.size()) - 1.0) * h, slots.back().validity);
}

}  // namespace

Interval slots_eval(const std::vector<ForwardTaylorRep>& slots, double h, const Interval& r) {
  std::optional<Interval> acc;
  if (slots.empty()) throw OutOfDomain("empty slot list");
  int lo = std::max(0, static_cast<int>(std::floor(r.lo() / h)) - 1);
  int hi = std::min(static_cast<int>(slots.size()) - 1, static_cast<int>(std::floor(r.hi() / h)) + 1);
  for (int j = lo; j <= hi; ++j) {
    double a = j * h;
    const auto& s = slots[static_cast<size_t>(j)];
    double lo_rel = rounding::sub_down(r.lo(), a);
    double hi_rel = rounding::sub_up(r.hi(), a);
    lo_rel = std::max(lo_rel, 0.0);
    hi_rel = std::min(hi_rel, s.validity);
    if (lo_rel > hi_rel) continue;
    Interval v = jet_eval(s, Interval(lo_rel, hi_rel));
    acc = acc ? hull(*acc, v) : v;
  }
  if (!acc) throw OutOfDomain("relative time outside slot coverage");
  return *acc;
}

Interval slots_range(const std::vector<ForwardTaylorRep>& slots, double h) {
  return slots_eval(slots, h, Interval(0.0, coverage(slots, h)));
}

std::vector<ForwardTaylorRep> truncate(const std::vector<ForwardTaylorRep>& src, double h, double length_hi) {
  int m = slot_count(length_hi, h);
  if (m > static_cast<int>(src.size())) throw OutOfValidity("truncate beyond source coverage");
  std::vector<ForwardTaylorRep> out(src.begin(), src.begin() + m);
  double v = last_validity(length_hi, h, m);
  if (v > out.back().validity) throw OutOfValidity("truncate beyond source coverage");
  out.back().validity = v;
  return out;
}

std::vector<ForwardTaylorRep> reanchor(const std::vector<ForwardTaylorRep>& src, double h,
                                       const Interval& offset, double length_hi) {
  const double cover = coverage(src, h);
  const int m = slot_count(length_hi, h);
  const int nsrc = static_cast<int>(src.size());
  std::vector<ForwardTaylorRep> out;
  out.reserve(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j) {
    double v = (j == m - 1) ? last_validity(length_hi, h, m) : h;
    Interval anchor = offset + Interval(j * h);
    double alo = std::max(anchor.lo(), 0.0);
    double ahi = std::min(anchor.hi(), cover);
    if (alo > ahi) throw OutOfValidity("reanchor: anchor outside source coverage");
    double reach = std::min(rounding::add_up(anchor.hi(), v), cover);

    std::optional<Jet> jet;
    std::optional<Interval> rem;
    for (int q = std::max(0, static_cast<int>(std::floor(alo / h)) - 1); q < nsrc; ++q) {
      double qa = q * h;
      if (qa > reach) break;
      const auto& s = src[static_cast<size_t>(q)];
      double qb = rounding::add_up(qa, s.validity);
      if (qb < alo) continue;
      rem = rem ? hull(*rem, s.remainder) : s.remainder;
      // Offsets inside this source slot for the anchor.
      double elo = std::max(rounding::sub_down(alo, qa), 0.0);
      double ehi = std::min(rounding::sub_up(ahi, qa), s.validity);
      if (elo > ehi) continue;
      Jet shifted = taylor_shift(s, Interval(elo, ehi));
      if (!jet) {
        jet = shifted;
      } else {
        for (size_t i = 0; i < jet->c.size(); ++i) (*jet)[i] = hull((*jet)[i], shifted[i]);
      }
    }
    if (!jet || !rem) throw OutOfValidity("reanchor: no source slot for anchor");
    out.push_back(ForwardTaylorRep{*jet, *rem, v});
  }
  return out;
}

namespace {

bool eval_segment(const Segment& seg, const Interval& t, Interval& out) {
  if (t.hi() < seg.start.lo() || t.lo() > seg.end.hi()) return false;
  Interval r = t - seg.start;
  double lo = std::max(r.lo(), 0.0);
  double hi = std::min(r.hi(), seg.length.hi());
  if (lo > hi) return false;
  out = slots_eval(seg.slots, seg.h, Interval(lo, hi));
  return true;
}

}  // namespace

Interval eval(const Segment& seg, const Interval& t) {
  Interval v;
  if (!eval_segment(seg, t, v)) throw OutOfDomain("time outside segment");
  return v;
}

Interval eval(const Piece& piece, const Interval& t) {
  std::optional<Interval> acc;
  for (const auto& seg : piece.segments) {
    Interval v;
    if (eval_segment(seg, t, v)) acc = acc ? hull(*acc, v) : v;
  }
  if (!acc) throw OutOfDomain("time outside piece");
  return *acc;
}

Interval eval(const SolRep& rep, const Interval& t) {
  if (t.lo() < -1.0 || t.hi() > 0.0) throw OutOfDomain("time outside [-1, 0]");
  std::optional<Interval> acc;
  for (const auto& piece : rep.pieces) {
    for (const auto& seg : piece.segments) {
      Interval v;
      if (eval_segment(seg, t, v)) acc = acc ? hull(*acc, v) : v;
    }
  }
  if (t.hi() == 0.0) acc = acc ? hull(*acc, rep.head) : rep.head;
  if (!acc) throw OutOfDomain("time not covered by any piece");
  return *acc;
}

Interval eval(const FSetGrid& x, const Interval& t) {
  if (t.lo() < -1.0 || t.hi() > 0.0) throw OutOfDomain("time outside [-1, 0]");
  std::optional<Interval> acc;
  const double h = x.h();
  // Relative time measured from -1; exact for power-of-two p.
  Interval r = t + Interval(1.0);
  if (r.lo() < 1.0) acc = slots_eval(x.slots, h, Interval(std::max(r.lo(), 0.0), std::min(r.hi(), 1.0)));
  if (t.hi() == 0.0) acc = acc ? hull(*acc, x.head) : x.head;
  return *acc;
}

Interval tube_eval(const std::vector<SolRep>& tube, const Interval& t) {
  std::optional<Interval> acc;
  for (size_t k = 0; k < tube.size(); ++k) {
    double a = static_cast<double>(k), b = a + 1.0;
    if (t.hi() < a || t.lo() > b) continue;
    double lo = std::max(t.lo(), a), hi = std::min(t.hi(), b);
    Interval local = Interval(lo, hi) - Interval(b);
    local = Interval(std::max(local.lo(), -1.0), std::min(local.hi(), 0.0));
    Interval v = eval(tube[k], local);
    acc = acc ? hull(*acc, v) : v;
  }
  if (!acc) throw OutOfDomain("time outside tube");
  return *acc;
}

Interval range(const Segment& seg) { return slots_range(seg.slots, seg.h); }

Interval range(const Piece& piece) {
  std::optional<Interval> acc;
  for (const auto& s : piece.segments) acc = acc ? hull(*acc, range(s)) : range(s);
  return *acc;
}

namespace {

std::vector<ForwardTaylorRep> initial_slots(const Interval& c, int p, int order) {
  const double h = 1.0 / p;
  const Interval cfac = pow(-c, order + 1) / Interval(std::tgamma(order + 2.0));
  std::vector<ForwardTaylorRep> slots;
  slots.reserve(static_cast<size_t>(p));
  for (int j = 0; j < p; ++j) {
    Interval z = exp(-c * Interval(j * h));
    ForwardTaylorRep s;
    s.jet = decay_jet(z, c, order);
    s.remainder = z * cfac * exp(-c * Interval(0.0, h));
    s.validity = h;
    slots.push_back(std::move(s));
  }
  return slots;
}

}  // namespace

SolRep make_initial(const Interval& c, int p, int order) {
  if (c.lo() <= 0.0) throw DomainError("c must be positive");
  SolRep rep;
  rep.p = p;
  rep.order = order;
  rep.head = exp(-c);
  Segment seg;
  seg.start = Interval(-1.0);
  seg.end = Interval(0.0);
  seg.length = Interval(1.0);
  seg.head = Interval(1.0);
  seg.h = 1.0 / p;
  seg.slots = initial_slots(c, p, order);
  rep.pieces.push_back(Piece{Branch::Below, {std::move(seg)}});
  return rep;
}

FSetGrid make_initial_fset(const Interval& c, int p, int order) {
  if (c.lo() <= 0.0) throw DomainError("c must be positive");
  FSetGrid x;
  x.p = p;
  x.head = exp(-c);
  x.slots = initial_slots(c, p, order);
  return x;
}

FSetGrid derivative_fset(const FSetGrid& x) {
  FSetGrid out;
  out.p = x.p;
  for (const auto& s : x.slots) out.slots.push_back(derivative(s));
  out.head = jet_eval(out.slots.back(), Interval(out.slots.back().validity));
  return out;
}

void check_branch(const Piece& piece) {
  for (const auto& seg : piece.segments) {
    const size_t n = seg.slots.size();
    for (size_t j = 0; j < n; ++j) {
      const auto& s = seg.slots[j];
      Interval v = jet_eval(s, Interval(0.0, s.validity));
      if (v.hi() <= 0.0) throw BranchCheckFailed("non-positive values in a solution piece");
      bool edge = (j == 0 || j + 1 == n);
      if (edge) continue;
      if (piece.branch == Branch::Above && v.lo() < 1.0)
        throw BranchCheckFailed("piece tagged above dips below 1 at slot " + std::to_string(j));
      if (piece.branch == Branch::Below && (v.hi() > 1.0 || v.lo() < 0.0))
        throw BranchCheckFailed("piece tagged below leaves [0,1] at slot " + std::to_string(j));
    }
  }
}

}  // namespace ddecap
