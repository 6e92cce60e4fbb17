#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ddecap/analytic.hpp"
#include "ddecap/certificate_io.hpp"
#include "ddecap/constants.hpp"
#include "ddecap/errors.hpp"
#include "ddecap/expr.hpp"
#include "ddecap/oracle.hpp"
#include "ddecap/proof.hpp"

using namespace ddecap;

namespace {

enum Exit { kOk = 0, kUsage = 1, kNotImplied = 2, kProofFailure = 3, kLedgerInfeasible = 4 };

struct AnalyticArgs {
  std::string k, c, d;
};

struct VerifyArgs {
  std::string k, c, d;
  int T = 0, grid = 0, order = 0;
  std::string out;
  bool slim = false;
  bool log = false;
};

struct ConstantsArgs {
  std::string cert, a, b, out;
  double n = 0.0;
  bool have_n = false;
};

struct SimulateArgs {
  std::string eq = "limit";
  std::string k, c, d, prefix;
  double n = 0.0;
  double tend = 0.0;
  double step = 1e-3;
};

int run_analytic(const AnalyticArgs& a) {
  const double k = parse_exact(a.k);
  const Interval c = parse_expr(a.c);
  const Interval d = parse_expr(a.d);
  AnalyticReport r = check_P_sufficient(c, d, k);
  std::cout << format_analytic(r);
  return r.certified ? kOk : kNotImplied;
}

int run_verify(const VerifyArgs& a) {
  OrbitParams p;
  p.k = parse_exact(a.k);
  p.c = parse_expr(a.c);
  p.d = parse_expr(a.d);
  p.c_text = a.c;
  p.d_text = a.d;
  p.T = a.T;
  p.p = a.grid;
  p.n = a.order;
  ProofConfig cfg;
  if (a.log) cfg.log = &std::cerr;

  const auto t0 = std::chrono::steady_clock::now();
  OrbitCertificate cert;
  try {
    cert = verify_property_P(p, cfg);
  } catch (const ProofFailure& e) {
    std::cerr << "ProofFailure [" << e.condition() << "] " << e.detail() << "\n";
    return kProofFailure;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::cout << "omega_p    " << to_decimal(cert.omega_p) << "\n";
  std::cout << "           " << to_decimal_pair(cert.omega_p) << "\n";
  std::cout << "L          " << to_decimal(cert.L) << "\n";
  std::cout << "           " << to_decimal_pair(cert.L) << "\n";
  std::cout << "crossings ";
  for (size_t i = 0; i < cert.crossing_times.size(); ++i)
    std::cout << " " << (cert.crossing_directions[i] > 0 ? "up@" : "down@") << to_decimal(cert.crossing_times[i], 10);
  std::cout << "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", secs);
  std::cout << "time       " << buf << " s\n";
  if (!a.out.empty()) {
    write_text_file(a.out, serialize_certificate(cert, a.slim));
    std::cout << "wrote      " << a.out << "\n";
  }
  return kOk;
}

int run_constants(const ConstantsArgs& a) {
  const std::string text = read_text_file(a.cert);
  OrbitCertificate cert = parse_certificate(text);
  if (cert.tube.empty()) {
    std::cerr << "certificate carries no tube (written with --slim); rerun verify without --slim\n";
    return kUsage;
  }
  ConstantsLedger L;
  try {
    L = compute_ledger(cert);
  } catch (const LedgerInfeasible& e) {
    std::cerr << "LedgerInfeasible [" << e.constant() << "] " << e.what() << "\n";
    return kLedgerInfeasible;
  }
  std::cout << format_ledger(L);

  if (a.have_n || !a.a.empty() || !a.b.empty()) {
    if (!a.have_n) throw DomainError("--n is required for the condition report");
    const bool a_is_c = a.a.empty() || a.a == cert.params.c_text;
    const bool b_is_d = a.b.empty() || a.b == cert.params.d_text;
    const Interval av = a_is_c ? L.c : parse_expr(a.a);
    const Interval bv = b_is_d ? L.d : parse_expr(a.b);
    if (a.n != std::floor(a.n) || a.n < L.k) throw DomainError("--n must be a natural number >= k");
    Main0Report r = check_main0(L, av, bv, a.n, L.k, a_is_c, b_is_d);
    std::cout << "\n" << format_main0(r);
    std::cout << (r.all_pass() ? "all conditions hold" : "some condition fails") << "\n";
  }
  if (!a.out.empty()) {
    write_text_file(a.out, serialize_certificate(cert, false, &L));
    std::cout << "wrote " << a.out << "\n";
  }
  return kOk;
}

int run_simulate(const SimulateArgs& a) {
  OracleConfig cfg;
  if (a.eq == "limit")
    cfg.eq = Equation::Limit;
  else if (a.eq == "prototype")
    cfg.eq = Equation::Prototype;
  else
    throw DomainError("--eq must be limit or prototype");
  cfg.k = parse_exact(a.k);
  cfg.c = parse_expr(a.c).mid();
  cfg.d = parse_expr(a.d).mid();
  cfg.n = a.n;
  cfg.t_end = a.tend;
  cfg.step = a.step;
  if (cfg.eq == Equation::Prototype && a.n <= 0.0) throw DomainError("--n is required with --eq prototype");
  Trajectory tr = simulate(cfg);
  auto [series, projection] = emit_plot(tr, a.prefix);
  if (auto r = first_return(tr)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "omega_p ~ %.12g  L ~ %.12g\n", r->omega, r->L);
    std::cout << buf;
  }
  if (tr.event_accumulation) std::cerr << "warning: more than 10000 level crossings (grazing?)\n";
  std::cout << series << "\n" << projection << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rigorous periodic orbits of x' = -c x + d g(x(t-1))"};
  app.require_subcommand(1);

  AnalyticArgs an;
  auto* c_an = app.add_subcommand("analytic", "closed-form sufficient condition on d");
  c_an->add_option("--k", an.k, "exponent of g")->required();
  c_an->add_option("--c", an.c, "decay rate")->required();
  c_an->add_option("--d", an.d, "feedback strength")->required();

  VerifyArgs vf;
  auto* c_vf = app.add_subcommand("verify", "computer-assisted proof of the periodic orbit");
  c_vf->add_option("--k", vf.k, "exponent of g")->required();
  c_vf->add_option("--c", vf.c, "decay rate")->required();
  c_vf->add_option("--d", vf.d, "feedback strength")->required();
  c_vf->add_option("--T", vf.T, "number of delay steps")->required();
  c_vf->add_option("--grid", vf.grid, "grid points per delay (power of two)")->required();
  c_vf->add_option("--order", vf.order, "Taylor order")->required();
  c_vf->add_option("--out", vf.out, "certificate file");
  c_vf->add_flag("--slim", vf.slim, "omit the solution tube");
  c_vf->add_flag("--log", vf.log, "per-step diagnostics on stderr");

  ConstantsArgs cs;
  auto* c_cs = app.add_subcommand("constants", "constant ledger, epsilon and N from a certificate");
  c_cs->add_option("--cert", cs.cert, "certificate file")->required();
  c_cs->add_option("--a", cs.a, "decay rate of the perturbed equation");
  c_cs->add_option("--b", cs.b, "feedback strength of the perturbed equation");
  auto* n_opt = c_cs->add_option("--n", cs.n, "prototype exponent");
  c_cs->add_option("--out", cs.out, "write the certificate with the ledger attached");

  SimulateArgs sm;
  auto* c_sm = app.add_subcommand("simulate", "floating-point simulation and plot data");
  c_sm->add_option("--eq", sm.eq, "limit or prototype")->check(CLI::IsMember({"limit", "prototype"}));
  c_sm->add_option("--k", sm.k, "exponent")->required();
  c_sm->add_option("--c", sm.c, "decay rate")->required();
  c_sm->add_option("--d", sm.d, "feedback strength")->required();
  c_sm->add_option("--n", sm.n, "prototype exponent");
  c_sm->add_option("--tend", sm.tend, "final time")->required();
  c_sm->add_option("--step", sm.step, "step size (at most 1e-3)");
  c_sm->add_option("--out", sm.prefix, "output file prefix")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  cs.have_n = n_opt->count() > 0;

  try {
    if (*c_an) return run_analytic(an);
    if (*c_vf) return run_verify(vf);
    if (*c_cs) return run_constants(cs);
    if (*c_sm) return run_simulate(sm);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
