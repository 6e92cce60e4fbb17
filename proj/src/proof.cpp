#include "ddecap/proof.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

namespace ddecap {

StepConfig ProofConfig::step_config(Field f) const {
  StepConfig s;
  s.field = f;
  s.c = c;
  s.d = d;
  s.k = k;
  s.order = order;
  s.enclosure_inflation = enclosure_inflation;
  s.max_enclosure_iters = max_enclosure_iters;
  return s;
}

NewtonResult inewton(const ForwardTaylorRep& rep, const NewtonConfig& cfg) {
  NewtonResult res;
  if (rep.order() < 1) {
    res.reason = "order too low for a derivative";
    return res;
  }
  const Interval T(0.0, rep.validity);
  const Interval& a = cfg.target;
  Interval F = jet_eval(rep, T);
  if (!overlaps(F, a)) {
    res.kind = NewtonResult::Kind::Empty;
    return res;
  }
  const ForwardTaylorRep D = derivative(rep);
  const Interval Fp = jet_eval(D, T);
  if (Fp.contains_zero()) {
    res.reason = "derivative enclosure contains 0";
    return res;
  }
  res.sign = Fp.lo() > 0.0 ? 1 : -1;

  bool exists = false;
  Interval f0 = jet_eval(rep, Interval(0.0)) - a;
  Interval f1 = jet_eval(rep, Interval(rep.validity)) - a;
  if ((f0.hi() < 0.0 && f1.lo() > 0.0) || (f0.lo() > 0.0 && f1.hi() < 0.0)) exists = true;

  Interval t = T;
  for (int it = 0; it < cfg.max_iters; ++it) {
    double m = t.mid();
    Interval fm = jet_eval(rep, Interval(m)) - a;
    Interval dp = jet_eval(D, t);
    Interval N = Interval(m) - fm / dp;
    if (strict_subset(N, t)) exists = true;
    auto nt = intersect(N, t);
    if (!nt) {
      res.kind = NewtonResult::Kind::Empty;
      return res;
    }
    bool stalled = (*nt == t);
    t = *nt;
    if (stalled || t.diam() < cfg.eps_M) break;
  }
  if (!exists) {
    res.reason = "existence of a root not proven";
    return res;
  }
  if (!strict_subset(t, T)) {
    res.reason = "root enclosure touches the domain boundary";
    return res;
  }
  res.kind = NewtonResult::Kind::UniqueRoot;
  res.root = t;
  return res;
}

namespace {

std::string fmt(const Interval& x) { return to_decimal_pair(x, 17); }

struct Domain {
  double lo, hi;
};

bool covered(const std::vector<Domain>& doms, double lo, double hi) {
  std::vector<Domain> d = doms;
  std::sort(d.begin(), d.end(), [](const Domain& a, const Domain& b) { return a.lo < b.lo; });
  double reach = lo;
  for (const auto& x : d) {
    if (x.lo > reach) break;
    reach = std::max(reach, x.hi);
    if (reach >= hi) return true;
  }
  return reach >= hi;
}

}  // namespace

std::vector<RootHit> find_crossings(const Segment& seg, const NewtonConfig& cfg) {
  const double h = seg.h;
  const int m = static_cast<int>(seg.slots.size());
  const double last_anchor = (m - 1) * h;
  std::vector<Domain> conclusive;
  std::vector<std::pair<RootHit, Domain>> hits;
  std::vector<int> pending;
  std::vector<std::string> reasons;

  auto record = [&](const NewtonResult& r, double anchor, double v) {
    Domain dom{anchor, rounding::add_up(anchor, v)};
    if (r.aborted()) return false;
    conclusive.push_back(dom);
    if (r.unique()) hits.push_back({RootHit{Interval(anchor) + r.root, r.sign}, dom});
    return true;
  };

  for (int j = 0; j < m; ++j) {
    const auto& s = seg.slots[static_cast<size_t>(j)];
    NewtonResult r = inewton(s, cfg);
    if (!record(r, j * h, s.validity)) {
      pending.push_back(j);
      reasons.push_back(r.reason);
    }
  }
  // Undecided slots: retry on slots re-anchored half a step away.
  for (size_t q = 0; q < pending.size(); ++q) {
    int j = pending[q];
    for (double o : {j * h - 0.5 * h, j * h + 0.5 * h}) {
      if (o < 0.0) continue;
      double room = rounding::add_down(last_anchor - o, seg.slots.back().validity);
      if (!(room > 0.0)) continue;
      double len = std::min(h, room);
      auto re = reanchor(seg.slots, h, Interval(o), len);
      record(inewton(re.front(), cfg), o, re.front().validity);
    }
    double v = seg.slots[static_cast<size_t>(j)].validity;
    if (!covered(conclusive, j * h, j * h + v)) {
      std::ostringstream os;
      os << "slot " << j << " undecided (" << reasons[q] << ")";
      throw ProofFailure("inewton", os.str());
    }
  }

  std::sort(hits.begin(), hits.end(),
            [](const auto& a, const auto& b) { return a.first.r.lo() < b.first.r.lo(); });
  std::vector<std::pair<RootHit, Domain>> merged;
  for (auto& hd : hits) {
    if (!merged.empty() && overlaps(merged.back().first.r, hd.first.r)) {
      auto& prev = merged.back();
      auto inside = [](const Interval& r, const Domain& d) { return d.lo < r.lo() && r.hi() < d.hi; };
      if (!(inside(hd.first.r, prev.second) || inside(prev.first.r, hd.second)) || prev.first.sign != hd.first.sign)
        throw ProofFailure("inewton", "overlapping root enclosures cannot be identified");
      auto both = intersect(prev.first.r, hd.first.r);
      prev.first.r = *both;
      continue;
    }
    merged.push_back(hd);
  }
  std::vector<RootHit> out;
  for (auto& hd : merged) out.push_back(hd.first);
  return out;
}

Preform shift(const SolRep& x, const ProofConfig& cfg) {
  if (x.head.contains(1.0)) throw ProofFailure("HeadOnSection", "head " + fmt(x.head) + " contains 1");
  Preform out;
  out.p = x.p;
  out.order = x.order;
  const double h = x.h();
  const StepConfig smooth = cfg.step_config(Field::Smooth);
  const StepConfig decay = cfg.step_config(Field::Decay);
  Interval z = x.head;
  for (size_t i = 0; i < x.pieces.size(); ++i) {
    const Piece& piece = x.pieces[i];
    Interval endv;
    Segment seg;
    if (piece.branch == Branch::Above) {
      seg = shift_decay(decay, piece.start(), piece.end(), piece.length(), h, z, endv);
    } else {
      if (piece.segments.size() != 1)
        throw ProofFailure("BranchAmbiguous", "piece " + std::to_string(i) + " below 1 is not a single segment");
      seg = shift_smooth(smooth, piece.segments.front(), z, endv);
    }
    if (cfg.fault_widen > 0.0)
      for (auto& s : seg.slots) s.remainder += Interval(-cfg.fault_widen, cfg.fault_widen);
    out.segments.push_back(std::move(seg));
    z = endv;
  }
  out.head = z;
  if (out.head.contains(1.0)) throw ProofFailure("HeadOnSection", "new head " + fmt(out.head) + " contains 1");
  return out;
}

SolRep recut(const Preform& w, const ProofConfig& cfg) {
  SolRep out;
  out.p = w.p;
  out.order = w.order;
  out.head = w.head;
  for (size_t i = 0; i < w.segments.size(); ++i) {
    const Segment& seg = w.segments[i];
    const double h = seg.h;
    std::vector<RootHit> roots = find_crossings(seg, cfg.newton);

    Branch tag;
    if (seg.head.lo() > 1.0) tag = Branch::Above;
    else if (seg.head.hi() < 1.0) tag = Branch::Below;
    else throw ProofFailure("HeadOnSection", "piece " + std::to_string(i) + " starts on the section");

    for (size_t q = 0; q < roots.size(); ++q) {
      const Interval& r = roots[q].r;
      if (!(r.lo() > 0.0 && r.hi() < seg.length.lo()))
        throw ProofFailure("recut", "crossing enclosure " + fmt(r) + " meets a cut point");
      if (q > 0 && !(roots[q - 1].r.hi() < r.lo())) throw ProofFailure("recut", "crossings not separated");
    }

    Interval sub_start = seg.start;
    Interval rel = Interval(0.0);
    Interval sub_head = seg.head;
    for (size_t q = 0; q <= roots.size(); ++q) {
      const bool last = q == roots.size();
      Interval rel_end = last ? seg.length : roots[q].r;
      Interval sub_len = rel_end - rel;
      if (auto tight = intersect(sub_len, Interval(0.0, seg.length.hi()))) sub_len = *tight;
      Segment sub;
      sub.start = sub_start;
      sub.end = last ? seg.end : seg.start + roots[q].r;
      sub.length = sub_len;
      sub.head = sub_head;
      sub.h = h;
      if (q == 0) sub.slots = truncate(seg.slots, h, sub_len.hi());
      else sub.slots = reanchor(seg.slots, h, rel, sub_len.hi());

      Piece piece{tag, {std::move(sub)}};
      try {
        check_branch(piece);
      } catch (const BranchCheckFailed& e) {
        throw ProofFailure("BranchCheckFailed", e.what());
      }
      out.pieces.push_back(std::move(piece));
      if (last) break;

      const int sign = roots[q].sign;
      Branch after = sign > 0 ? Branch::Above : Branch::Below;
      if (after == tag) throw ProofFailure("recut", "crossing direction contradicts the piece side");
      tag = after;
      rel = roots[q].r;
      sub_start = seg.start + roots[q].r;
      sub_head = cfg.newton.target;
      out.crossings.push_back(Crossing{sub_start, sign});
    }
  }
  return out;
}

SolRep rake(const SolRep& x) {
  SolRep out = x;
  out.pieces.clear();
  for (const auto& piece : x.pieces) {
    if (!out.pieces.empty() && piece.branch == Branch::Above && out.pieces.back().branch == Branch::Above) {
      auto& segs = out.pieces.back().segments;
      segs.insert(segs.end(), piece.segments.begin(), piece.segments.end());
    } else {
      out.pieces.push_back(piece);
    }
  }
  return out;
}

SolRep main_step(const SolRep& x, const ProofConfig& cfg) { return rake(recut(shift(x, cfg), cfg)); }

namespace {

bool power_of_two(int p) { return p > 0 && (p & (p - 1)) == 0; }

double max_width(const std::vector<Interval>& xs) {
  double w = 0.0;
  for (const auto& x : xs) w = std::max(w, x.diam());
  return w;
}

}  // namespace

OrbitCertificate verify_property_P(const OrbitParams& params, const ProofConfig& base) {
  if (!(params.c.lo() > 0.0)) throw DomainError("c must be positive");
  if (!(params.d.lo() > params.c.hi())) throw DomainError("d must exceed c");
  if (!(params.k > 0.0)) throw DomainError("k must be positive");
  if (params.T < 2) throw DomainError("T must be at least 2");
  if (!power_of_two(params.p)) throw DomainError("grid size must be a power of two");
  if (params.n < 1) throw OrderTooLow("order must be at least 1");

  ProofConfig cfg = base;
  cfg.c = params.c;
  cfg.d = params.d;
  cfg.k = params.k;
  cfg.p = params.p;
  cfg.order = params.n;

  OrbitCertificate cert;
  cert.params = params;
  SolRep X = make_initial(params.c, params.p, params.n);
  cert.tube.push_back(X);

  std::optional<Interval> run_start;
  for (int step = 1; step <= params.T; ++step) {
    try {
      X = main_step(X, cfg);
    } catch (const ProofFailure& e) {
      throw ProofFailure(e.condition(), "step " + std::to_string(step) + ": " + e.detail());
    } catch (const std::exception& e) {
      throw ProofFailure("integration", "step " + std::to_string(step) + ": " + e.what());
    }
    cert.tube.push_back(X);
    if (cfg.log) {
      std::vector<Interval> cuts = X.cut_points();
      *cfg.log << "step " << step << " pieces=" << X.pieces.size() << " cuts=" << cuts.size()
               << " crossings=" << X.crossings.size() << " head=" << to_decimal_pair(X.head)
               << " head_width=" << X.head.diam() << " max_cut_width=" << max_width(cuts) << "\n";
    }
    for (const auto& cr : X.crossings) {
      Interval t = Interval(static_cast<double>(step + 1)) + cr.time;
      cert.crossing_times.push_back(t);
      cert.crossing_directions.push_back(cr.direction);
      if (cr.direction > 0) {
        run_start = t;
        continue;
      }
      if (!run_start) continue;
      Interval L = t - *run_start;
      if (L.lo() > 1.0) {
        cert.omega_p = t;
        cert.L = L;
        cert.run_start = *run_start;
        return cert;
      }
      if (L.hi() >= 1.0)
        throw ProofFailure("L", "run length " + to_decimal_pair(L) + " not separated from 1");
      run_start.reset();
    }
  }
  throw ProofFailure("return", "no down-crossing closing a run above 1 longer than one delay by step " +
                                   std::to_string(params.T));
}

}  // namespace ddecap
