#include "ddecap/oracle.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

#include "ddecap/errors.hpp"

namespace ddecap {

namespace {

constexpr std::size_t kMaxEvents = 10000;

double hermite(const StepRecord& r, double t) {
  const double H = r.t1 - r.t0;
  if (r.decay) {
    // Exact decay; d0 = -c x0.
    return r.x0 * std::exp(r.d0 / r.x0 * (t - r.t0));
  }
  const double s = (t - r.t0) / H;
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * r.x0 + (s3 - 2 * s2 + s) * H * r.d0 + (-2 * s3 + 3 * s2) * r.x1 +
         (s3 - s2) * H * r.d1;
}

class Integrator {
 public:
  explicit Integrator(const OracleConfig& cfg) : cfg_(cfg) {}

  Trajectory run() {
    Trajectory& tr = tr_;
    tr.cfg = cfg_;
    const int M = static_cast<int>(std::ceil(1.0 / cfg_.step - 1e-9));
    tr.samples_per_delay = M;
    const double h = 1.0 / M;

    for (int i = 0; i < M; ++i) {
      double t0 = static_cast<double>(i) / M, t1 = static_cast<double>(i + 1) / M;
      double x0 = std::exp(-cfg_.c * t0), x1 = std::exp(-cfg_.c * t1);
      tr.grid.push_back(x0);
      tr.records.push_back({t0, t1, x0, x1, -cfg_.c * x0, -cfg_.c * x1, true});
    }
    tr.grid.push_back(std::exp(-cfg_.c));
    // x(0) = 1 is a crossing of the history.
    breakpoints_.insert(1.0);
    breakpoints_.insert(2.0);

    const long steps = static_cast<long>(std::ceil(cfg_.t_end * M - 1e-9));
    double x = tr.grid.back();
    for (long i = M; i < steps; ++i) {
      const double a = static_cast<double>(i) / M;
      const double b = static_cast<double>(i + 1) / M;
      double t = a;
      auto it = breakpoints_.upper_bound(a);
      while (it != breakpoints_.end() && *it < b) {
        x = substep(t, *it, x);
        t = *it;
        it = breakpoints_.upper_bound(t);
      }
      x = substep(t, b, x);
      tr.grid.push_back(x);
    }
    (void)h;
    return std::move(tr_);
  }

 private:
  double g(double v) const {
    v = std::max(v, 0.0);
    if (cfg_.eq == Equation::Prototype) return std::pow(v, cfg_.k) / (1.0 + std::pow(v, cfg_.n));
    return std::pow(v, cfg_.k);
  }

  double delayed(double t) const { return tr_.eval(t - 1.0); }

  double rhs(double t, double x) const { return -cfg_.c * x + cfg_.d * g(delayed(t)); }

  double substep(double a, double b, double x0) {
    const double H = b - a;
    StepRecord r{a, b, x0, 0.0, 0.0, 0.0, false};
    const bool decay = cfg_.eq == Equation::Limit && delayed(0.5 * (a + b)) > 1.0;
    if (decay) {
      r.decay = true;
      r.x1 = x0 * std::exp(-cfg_.c * H);
      r.d0 = -cfg_.c * x0;
      r.d1 = -cfg_.c * r.x1;
    } else {
      double k1 = rhs(a, x0);
      double k2 = rhs(a + H / 2, x0 + H / 2 * k1);
      double k3 = rhs(a + H / 2, x0 + H / 2 * k2);
      double k4 = rhs(b, x0 + H * k3);
      r.x1 = x0 + H / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
      r.d0 = k1;
      r.d1 = rhs(b, r.x1);
    }
    tr_.records.push_back(r);
    if ((r.x0 < 1.0) != (r.x1 < 1.0)) locate(r);
    return r.x1;
  }

  void locate(const StepRecord& r) {
    double tau;
    if (r.decay) {
      tau = r.t0 + std::log(r.x0) / cfg_.c;
    } else {
      double lo = r.t0, hi = r.t1;
      const bool rising = r.x0 < 1.0;
      while (hi - lo > 1e-13) {
        double mid = 0.5 * (lo + hi);
        if ((hermite(r, mid) < 1.0) == rising)
          lo = mid;
        else
          hi = mid;
      }
      tau = 0.5 * (lo + hi);
    }
    tau = std::clamp(tau, r.t0, r.t1);
    tr_.crossings.push_back({tau, r.x1 > r.x0 ? +1 : -1});
    if (tr_.crossings.size() > kMaxEvents) {
      tr_.event_accumulation = true;
      return;
    }
    breakpoints_.insert(tau + 1.0);
    breakpoints_.insert(tau + 2.0);
  }

  OracleConfig cfg_;
  Trajectory tr_;
  std::set<double> breakpoints_;
};

std::string render(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

double Trajectory::eval(double t) const {
  if (t < 0.0 || t > end()) throw OutOfDomain("time outside the simulated range");
  if (t <= 1.0) return std::exp(-cfg.c * t);
  auto it = std::upper_bound(records.begin(), records.end(), t,
                             [](double v, const StepRecord& r) { return v < r.t1; });
  if (it == records.end()) --it;
  return hermite(*it, t);
}

Trajectory simulate(const OracleConfig& cfg) {
  if (!(cfg.step > 0.0) || cfg.step > 1e-3) throw DomainError("oracle step must lie in (0, 1e-3]");
  if (!(cfg.c > 0.0) || !(cfg.d > cfg.c)) throw DomainError("need d > c > 0");
  if (!(cfg.k > 0.0)) throw DomainError("k must be positive");
  if (!(cfg.t_end > 1.0)) throw DomainError("t_end must exceed one delay");
  if (cfg.eq == Equation::Prototype && !(cfg.n >= cfg.k)) throw DomainError("prototype needs n >= k");
  return Integrator(cfg).run();
}

std::optional<OracleReturn> first_return(const Trajectory& tr) {
  std::optional<double> run_start;
  for (const auto& cr : tr.crossings) {
    if (cr.direction > 0) {
      run_start = cr.time;
      continue;
    }
    if (!run_start) continue;
    double L = cr.time - *run_start;
    if (L > 1.0) return OracleReturn{*run_start, cr.time, L};
    run_start.reset();
  }
  return std::nullopt;
}

std::pair<std::string, std::string> emit_plot(const Trajectory& tr, const std::string& prefix) {
  const int M = tr.samples_per_delay;
  if (static_cast<int>(tr.grid.size()) <= M) throw DomainError("trajectory shorter than one delay");
  const std::string stem =
      prefix + render(tr.cfg.k) + "_" + render(tr.cfg.c) + "_" + render(tr.cfg.d) + "_";
  const std::string series = stem + "series.tsv";
  const std::string projection = stem + "projection.tsv";

  auto open = [](const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot write " + path);
    return f;
  };
  std::FILE* fs = open(series);
  for (size_t i = 0; i < tr.grid.size(); ++i)
    std::fprintf(fs, "%.17g\t%.17g\n", static_cast<double>(i) / M, tr.grid[i]);
  std::fclose(fs);
  std::FILE* fp = open(projection);
  for (size_t i = static_cast<size_t>(M); i < tr.grid.size(); ++i)
    std::fprintf(fp, "%.17g\t%.17g\n", tr.grid[i], tr.grid[i - M]);
  std::fclose(fp);
  return {series, projection};
}

}  // namespace ddecap
