#pragma once

#include "ddecap/grid.hpp"

namespace ddecap {

struct StepConfig {
  Field field = Field::Smooth;
  Interval c{1.0};
  Interval d{1.0};
  double k = 2.0;
  int order = 4;
  double enclosure_inflation = 1.5;
  int max_enclosure_iters = 20;
};

// Validates c.lo > 0, d.lo > 0, order >= 1 and the enclosure settings.
void validate(const StepConfig& cfg);

struct SlotStep {
  ForwardTaylorRep slot;  // new function on [0, v], value z at 0
  Interval end_value;     // value at v
};

// One grid slot of the method of steps. `past` represents the delayed input
// on the same relative window [0, v].
//
// Smooth branch: the jet is kept affine in the start value z,
//   x_i = alpha_i z + beta_i,
// where alpha is the jet of e^{-c s} and beta solves the recurrence with
// x_0 = 0. The remainder encloses x^[n+1] over [0, v]; it is obtained from
// an a-priori enclosure E of x on [0, v] validated by
//   z + [0, v] (-c E + d g(U)) subset E,
// with U the range of the input, and one refinement pass.
SlotStep advance_slot(const StepConfig& cfg, const Interval& z, const ForwardTaylorRep& past, double v);

// Time-h image of an f-set: drops the oldest slot, appends the new one.
FSetGrid step_full(const StepConfig& cfg, const FSetGrid& x);

// Time-eps image for eps inside [0, h). The represented functions must be
// C^{n+1} across the grid points and across the current time.
FSetGrid step_partial(const StepConfig& cfg, const FSetGrid& x, const Interval& eps);

// step_partial(eps) after `steps` full steps.
FSetGrid propagate(const StepConfig& cfg, FSetGrid x, int steps, const Interval& eps);

// Full-delay image of one segment on the smooth branch: the new segment
// covers the same local window and starts from `head`. `end_value`
// receives the value at the segment end.
Segment shift_smooth(const StepConfig& cfg, const Segment& past, const Interval& head, Interval& end_value);

// Exact decay e^{-c r} from `head` over [start, end].
Segment shift_decay(const StepConfig& cfg, const Interval& start, const Interval& end, const Interval& length,
                    double h, const Interval& head, Interval& end_value);

}  // namespace ddecap
