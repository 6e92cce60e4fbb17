#pragma once

#include <string>
#include <vector>

#include "ddecap/interval.hpp"
#include "ddecap/jet.hpp"

namespace ddecap {

// A (p, n) function set on [-1, 0]: slots[j] represents the function on
// [-1 + j h, -1 + (j+1) h] and the head is the value at 0. The backward
// index i of the grid point t_i = -i h corresponds to j = p - i.
struct FSetGrid {
  int p = 0;
  Interval head;
  std::vector<ForwardTaylorRep> slots;

  double h() const { return 1.0 / p; }
  int order() const { return slots.empty() ? 0 : slots.front().order(); }
};

enum class Branch { Above, Below };

const char* to_string(Branch b);

// One smooth stretch of a solution segment. Slot j is anchored at
// start + j h where start is the true (unknown) point inside the `start`
// enclosure; the slots cover [0, length.hi] relative to that anchor.
struct Segment {
  Interval start;
  Interval end;
  Interval length;  // enclosure of end - start, tracked on its own
  Interval head;    // value at start
  double h = 0.0;   // grid step
  std::vector<ForwardTaylorRep> slots;
};

// A maximal stretch between cut points, wholly >= 1 (Above) or wholly in
// [0, 1] (Below). Only merged Above runs hold more than one segment.
struct Piece {
  Branch branch = Branch::Below;
  std::vector<Segment> segments;

  Interval start() const { return segments.front().start; }
  Interval end() const { return segments.back().end; }
  Interval head() const { return segments.front().head; }
  Interval length() const;
};

// A proven transversal crossing of level 1 inside one segment.
struct Crossing {
  Interval time;  // local time in [-1, 0]
  int direction;  // +1 upward, -1 downward
};

// Piecewise representation of x on [k, k+1], stored in local time
// s = t - k - 1 in [-1, 0].
struct SolRep {
  int p = 0;
  int order = 0;
  Interval head;  // value at local time 0
  std::vector<Piece> pieces;
  std::vector<Crossing> crossings;

  double h() const { return 1.0 / p; }
  std::vector<Interval> cut_points() const;
};

struct OrbitParams {
  double k = 2.0;
  Interval c, d;
  std::string c_text, d_text;
  int T = 0, p = 0, n = 0;
};

struct OrbitCertificate {
  OrbitParams params;
  Interval omega_p;
  Interval L;
  Interval run_start;  // up-crossing that opens the final run above 1
  std::vector<Interval> crossing_times;  // absolute times
  std::vector<int> crossing_directions;
  std::vector<SolRep> tube;  // tube[k] covers [k, k+1]
};

// Number of grid slots needed to cover [0, length_hi] and the validity of
// the last one.
int slot_count(double length_hi, double h);
double last_validity(double length_hi, double h, int m);

// Hull of slot evaluations over relative times r; parts of r outside the
// covered range are ignored. Throws OutOfDomain when nothing overlaps.
Interval slots_eval(const std::vector<ForwardTaylorRep>& slots, double h, const Interval& r);
// Range over the whole covered span.
Interval slots_range(const std::vector<ForwardTaylorRep>& slots, double h);

// Re-expand a slot sequence at base points offset + j h (offset may be a
// nondegenerate interval). The result covers [0, length_hi] relative to the
// new anchor. The function represented must be C^{n+1} across the grid
// points of the source (true for every solution piece built here).
std::vector<ForwardTaylorRep> reanchor(const std::vector<ForwardTaylorRep>& src, double h,
                                       const Interval& offset, double length_hi);
// Keep a prefix of src covering [0, length_hi].
std::vector<ForwardTaylorRep> truncate(const std::vector<ForwardTaylorRep>& src, double h,
                                       double length_hi);

Interval eval(const Segment& seg, const Interval& t);
Interval eval(const Piece& piece, const Interval& t);
Interval eval(const SolRep& rep, const Interval& t);
Interval eval(const FSetGrid& x, const Interval& t);
// Evaluation on the absolute time axis of a certificate tube.
Interval tube_eval(const std::vector<SolRep>& tube, const Interval& t);

Interval range(const Segment& seg);
Interval range(const Piece& piece);

// x(t) = e^{-c t} on [0, 1] written on local time [-1, 0].
SolRep make_initial(const Interval& c, int p, int order);
FSetGrid make_initial_fset(const Interval& c, int p, int order);

FSetGrid derivative_fset(const FSetGrid& x);

// Throws BranchCheckFailed if the piece's range contradicts its tag. Slots
// adjacent to the piece ends are only checked for positivity, since the value
// there may approach 1 at a crossing.
void check_branch(const Piece& piece);

}  // namespace ddecap
