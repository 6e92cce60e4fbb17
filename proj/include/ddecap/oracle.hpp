#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ddecap {

// Floating-point simulator for x' = -c x + d g(x(t-1)) with history
// x(t) = e^{-c t} on [0, 1]. Not rigorous; used as a reference.
enum class Equation { Limit, Prototype };

struct OracleConfig {
  Equation eq = Equation::Limit;
  double k = 2.0;
  double c = 1.0;
  double d = 2.0;
  double n = 0.0;  // exponent of the prototype f_n(x) = x^k / (1 + x^n)
  double t_end = 2.0;
  double step = 1e-3;  // rounded down to 1 / M for an integer M
};

struct StepRecord {
  double t0, t1, x0, x1, d0, d1;
  bool decay;
};

struct OracleCrossing {
  double time;
  int direction;  // +1 upward, -1 downward
};

struct Trajectory {
  OracleConfig cfg;
  int samples_per_delay = 0;
  std::vector<double> grid;  // x(i / samples_per_delay)
  std::vector<StepRecord> records;
  std::vector<OracleCrossing> crossings;
  bool event_accumulation = false;  // more than 1e4 level crossings

  double step() const { return 1.0 / samples_per_delay; }
  double end() const { return records.empty() ? 1.0 : records.back().t1; }
  // Dense output on [0, end()].
  double eval(double t) const;
};

// RK4 on a grid whose step divides the delay. Substeps are cut at t + 1 and
// t + 2 for every crossing time t; while the delayed value exceeds 1 the
// limiting equation is solved in closed form. Crossings are located by
// bisection on the dense output.
Trajectory simulate(const OracleConfig& cfg);

struct OracleReturn {
  double run_start;
  double omega;
  double L;
};
// First down-crossing closing a run above 1 longer than one delay.
std::optional<OracleReturn> first_return(const Trajectory& tr);

// Writes <prefix><k>_<c>_<d>_series.tsv with (t, x(t)) and
// <prefix><k>_<c>_<d>_projection.tsv with (x(t), x(t-1)) for t >= 1.
std::pair<std::string, std::string> emit_plot(const Trajectory& tr, const std::string& prefix);

}  // namespace ddecap
