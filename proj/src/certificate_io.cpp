#include "ddecap/certificate_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ddecap {

using nlohmann::json;

namespace {

json enc(const Interval& x) {
  auto [lo, hi] = to_hex(x);
  return json::array({lo, hi});
}

Interval dec(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::runtime_error("interval must be a pair of hex strings");
  return from_hex(j.at(0).get<std::string>(), j.at(1).get<std::string>());
}

json enc_slot(const ForwardTaylorRep& s) {
  json jet = json::array();
  for (const auto& c : s.jet.c) jet.push_back(enc(c));
  return {{"jet", jet}, {"remainder", enc(s.remainder)}, {"validity", s.validity}};
}

ForwardTaylorRep dec_slot(const json& j) {
  ForwardTaylorRep s;
  for (const auto& c : j.at("jet")) s.jet.c.push_back(dec(c));
  s.remainder = dec(j.at("remainder"));
  s.validity = j.at("validity").get<double>();
  return s;
}

json enc_solrep(const SolRep& x) {
  json pieces = json::array();
  for (const auto& piece : x.pieces) {
    json segs = json::array();
    for (const auto& seg : piece.segments) {
      json slots = json::array();
      for (const auto& s : seg.slots) slots.push_back(enc_slot(s));
      segs.push_back({{"start", enc(seg.start)},
                      {"end", enc(seg.end)},
                      {"length", enc(seg.length)},
                      {"head", enc(seg.head)},
                      {"h", seg.h},
                      {"slots", slots}});
    }
    pieces.push_back({{"branch", to_string(piece.branch)}, {"segments", segs}});
  }
  json crossings = json::array();
  for (const auto& c : x.crossings) crossings.push_back({{"time", enc(c.time)}, {"direction", c.direction}});
  return {{"p", x.p}, {"order", x.order}, {"head", enc(x.head)}, {"pieces", pieces}, {"crossings", crossings}};
}

SolRep dec_solrep(const json& j) {
  SolRep x;
  x.p = j.at("p").get<int>();
  x.order = j.at("order").get<int>();
  x.head = dec(j.at("head"));
  for (const auto& jp : j.at("pieces")) {
    Piece piece;
    const std::string b = jp.at("branch").get<std::string>();
    if (b == "above")
      piece.branch = Branch::Above;
    else if (b == "below")
      piece.branch = Branch::Below;
    else
      throw std::runtime_error("unknown branch tag " + b);
    for (const auto& js : jp.at("segments")) {
      Segment seg;
      seg.start = dec(js.at("start"));
      seg.end = dec(js.at("end"));
      seg.length = dec(js.at("length"));
      seg.head = dec(js.at("head"));
      seg.h = js.at("h").get<double>();
      for (const auto& sl : js.at("slots")) seg.slots.push_back(dec_slot(sl));
      piece.segments.push_back(std::move(seg));
    }
    x.pieces.push_back(std::move(piece));
  }
  for (const auto& jc : j.at("crossings")) x.crossings.push_back({dec(jc.at("time")), jc.at("direction").get<int>()});
  return x;
}

json enc_ledger(const ConstantsLedger& L) {
  json checks = json::array();
  for (const auto& c : L.checks) checks.push_back({{"name", c.name}, {"verified", c.verified}});
  char nbuf[64];
  std::snprintf(nbuf, sizeof nbuf, "%.0f", L.N);
  return {{"k", L.k},
          {"c", enc(L.c)},
          {"d", enc(L.d)},
          {"omega_p", enc(L.omega_p)},
          {"L", enc(L.L)},
          {"xi0", enc(L.xi0)},
          {"p_m", enc(L.p_m)},
          {"p_M", enc(L.p_M)},
          {"kappa1", enc(L.kappa1)},
          {"kappa2", enc(L.kappa2)},
          {"m", L.m},
          {"k0", L.k0},
          {"delta0", enc(L.delta0)},
          {"delta1", enc(L.delta1)},
          {"mu", enc(L.mu)},
          {"g_prime_norm", enc(L.g_prime_norm)},
          {"k1", enc(L.k1)},
          {"k2", enc(L.k2)},
          {"delta2", enc(L.delta2)},
          {"gamma", enc(L.gamma)},
          {"eps0", enc(L.eps0)},
          {"eps1", enc(L.eps1)},
          {"sigma0", enc(L.sigma0)},
          {"sigma1", enc(L.sigma1)},
          {"epsilon", enc(L.epsilon)},
          {"K0", enc(L.K0)},
          {"N", std::string(nbuf)},
          {"checks", checks}};
}

ConstantsLedger dec_ledger(const json& j) {
  ConstantsLedger L;
  L.k = j.at("k").get<double>();
  L.c = dec(j.at("c"));
  L.d = dec(j.at("d"));
  L.omega_p = dec(j.at("omega_p"));
  L.L = dec(j.at("L"));
  L.xi0 = dec(j.at("xi0"));
  L.p_m = dec(j.at("p_m"));
  L.p_M = dec(j.at("p_M"));
  L.kappa1 = dec(j.at("kappa1"));
  L.kappa2 = dec(j.at("kappa2"));
  L.m = j.at("m").get<int>();
  L.k0 = j.at("k0").get<int>();
  L.delta0 = dec(j.at("delta0"));
  L.delta1 = dec(j.at("delta1"));
  L.mu = dec(j.at("mu"));
  L.g_prime_norm = dec(j.at("g_prime_norm"));
  L.k1 = dec(j.at("k1"));
  L.k2 = dec(j.at("k2"));
  L.delta2 = dec(j.at("delta2"));
  L.gamma = dec(j.at("gamma"));
  L.eps0 = dec(j.at("eps0"));
  L.eps1 = dec(j.at("eps1"));
  L.sigma0 = dec(j.at("sigma0"));
  L.sigma1 = dec(j.at("sigma1"));
  L.epsilon = dec(j.at("epsilon"));
  L.K0 = dec(j.at("K0"));
  L.N = std::stod(j.at("N").get<std::string>());
  for (const auto& c : j.at("checks")) L.checks.push_back({c.at("name").get<std::string>(), c.at("verified").get<bool>()});
  return L;
}

json parse_or_throw(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed certificate: ") + e.what());
  }
  if (!j.is_object() || j.value("schema_version", -1) != kCertificateSchemaVersion)
    throw std::runtime_error("unsupported certificate schema");
  return j;
}

}  // namespace

std::string serialize_certificate(const OrbitCertificate& cert, bool slim, const ConstantsLedger* ledger) {
  const auto& P = cert.params;
  json j;
  j["schema_version"] = kCertificateSchemaVersion;
  j["params"] = {{"k", P.k},
                 {"c", {{"text", P.c_text}, {"enclosure", enc(P.c)}}},
                 {"d", {{"text", P.d_text}, {"enclosure", enc(P.d)}}},
                 {"T", P.T},
                 {"grid", P.p},
                 {"order", P.n}};
  j["omega_p"] = enc(cert.omega_p);
  j["L"] = enc(cert.L);
  j["run_start"] = enc(cert.run_start);
  json crossings = json::array();
  for (size_t i = 0; i < cert.crossing_times.size(); ++i)
    crossings.push_back({{"time", enc(cert.crossing_times[i])}, {"direction", cert.crossing_directions[i]}});
  j["crossings"] = crossings;
  j["summary"] = {{"omega_p", to_decimal(cert.omega_p)}, {"L", to_decimal(cert.L)}};
  if (!slim) {
    json tube = json::array();
    for (const auto& x : cert.tube) tube.push_back(enc_solrep(x));
    j["tube"] = tube;
  }
  if (ledger) j["ledger"] = enc_ledger(*ledger);
  return j.dump(1) + "\n";
}

OrbitCertificate parse_certificate(const std::string& text) {
  json j = parse_or_throw(text);
  try {
    OrbitCertificate cert;
    const json& p = j.at("params");
    cert.params.k = p.at("k").get<double>();
    cert.params.c = dec(p.at("c").at("enclosure"));
    cert.params.c_text = p.at("c").at("text").get<std::string>();
    cert.params.d = dec(p.at("d").at("enclosure"));
    cert.params.d_text = p.at("d").at("text").get<std::string>();
    cert.params.T = p.at("T").get<int>();
    cert.params.p = p.at("grid").get<int>();
    cert.params.n = p.at("order").get<int>();
    cert.omega_p = dec(j.at("omega_p"));
    cert.L = dec(j.at("L"));
    cert.run_start = dec(j.at("run_start"));
    for (const auto& c : j.at("crossings")) {
      cert.crossing_times.push_back(dec(c.at("time")));
      cert.crossing_directions.push_back(c.at("direction").get<int>());
    }
    if (j.contains("tube"))
      for (const auto& x : j.at("tube")) cert.tube.push_back(dec_solrep(x));
    return cert;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed certificate: ") + e.what());
  }
}

std::optional<ConstantsLedger> parse_ledger(const std::string& text) {
  json j = parse_or_throw(text);
  if (!j.contains("ledger")) return std::nullopt;
  try {
    return dec_ledger(j.at("ledger"));
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed ledger: ") + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace ddecap
