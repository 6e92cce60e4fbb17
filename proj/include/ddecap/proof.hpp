#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "ddecap/grid.hpp"
#include "ddecap/stepper.hpp"

namespace ddecap {

struct NewtonConfig {
  double eps_M = 1e-15;
  int max_iters = 10;
  Interval target{1.0};
};

struct NewtonResult {
  enum class Kind { Empty, UniqueRoot, Abort };
  Kind kind = Kind::Abort;
  Interval root;   // valid for UniqueRoot
  int sign = 0;    // sign of the derivative on the domain, 0 if unknown
  std::string reason;

  bool empty() const { return kind == Kind::Empty; }
  bool unique() const { return kind == Kind::UniqueRoot; }
  bool aborted() const { return kind == Kind::Abort; }
};

// Interval Newton on [0, validity] for rep(s) = target. UniqueRoot requires
// proven existence (Newton image strictly inside the current box, or a
// strict sign change at the domain ends), a derivative bounded away from 0,
// and a root enclosure in the interior of the domain.
NewtonResult inewton(const ForwardTaylorRep& rep, const NewtonConfig& cfg = {});

struct ProofConfig {
  Interval c{1.0};
  Interval d{1.0};
  double k = 2.0;
  int p = 128;
  int order = 4;
  NewtonConfig newton;
  double enclosure_inflation = 1.5;
  int max_enclosure_iters = 20;
  // Test hook: added as +-fault_widen to every remainder produced by shift.
  double fault_widen = 0.0;
  std::ostream* log = nullptr;

  StepConfig step_config(Field f) const;
};

// One full delay applied to every piece, before crossings are located.
// segments[i] covers the window of input piece i.
struct Preform {
  int p = 0;
  int order = 0;
  Interval head;
  std::vector<Segment> segments;
};

Preform shift(const SolRep& x, const ProofConfig& cfg);
SolRep recut(const Preform& w, const ProofConfig& cfg);
SolRep rake(const SolRep& x);
SolRep main_step(const SolRep& x, const ProofConfig& cfg);

struct RootHit {
  Interval r;  // relative to the segment anchor
  int sign;
};
// All level crossings of one segment, each proven unique and transversal.
// Throws ProofFailure when some slot cannot be decided.
std::vector<RootHit> find_crossings(const Segment& seg, const NewtonConfig& cfg);

// Iterates main_step from make_initial, at most T times, and certifies the
// first down-crossing omega_p that closes a run above 1 of length L > 1.
// Throws ProofFailure on any failed step or condition.
OrbitCertificate verify_property_P(const OrbitParams& params, const ProofConfig& base = {});

}  // namespace ddecap
