// Copyright 2026 The ybx Authors
// SPDX-License-Identifier: Apache-2.0

#include "ybx/io.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

namespace ybx {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw InputError("field '" + field + "': " + what);
}

const json& need(const json& j, const std::string& key, const std::string& where = "") {
  if (!j.is_object() || !j.contains(key)) bad(where + key, "missing");
  return j.at(key);
}

int need_int(const json& j, const std::string& key, int lo, int hi) {
  const json& v = need(j, key);
  if (!v.is_number_integer()) bad(key, "must be an integer");
  int x = v.get<int>();
  if (x < lo || x > hi) bad(key, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return x;
}

Rational rat(const json& v, const std::string& field) {
  if (!v.is_string()) bad(field, "rationals are written as strings \"p/q\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const InputError& e) {
    bad(field, e.what());
  }
}

// nested arrays of the given depth and extent m
json nest(const std::vector<Rational>& flat, int m, int depth) {
  if (depth == 0) return to_string(flat.front());
  json a = json::array();
  std::size_t stride = flat.size() / std::size_t(m);
  for (int i = 0; i < m; ++i)
    a.push_back(nest(std::vector<Rational>(flat.begin() + std::ptrdiff_t(i * stride),
                                           flat.begin() + std::ptrdiff_t((i + 1) * stride)),
                     m, depth - 1));
  return a;
}

void unnest(const json& j, int m, int depth, const std::string& field, std::vector<Rational>& out) {
  if (depth == 0) {
    out.push_back(rat(j, field));
    return;
  }
  if (!j.is_array() || int(j.size()) != m) bad(field, "expected an array of length " + std::to_string(m));
  for (int i = 0; i < m; ++i) unnest(j[std::size_t(i)], m, depth - 1, field + "[" + std::to_string(i) + "]", out);
}

template <class S, class F>
json flat(const LabeledTensor<S>& t, F f) {
  json a = json::array();
  for (std::size_t k = 0; k < t.size(); ++k) a.push_back(f(t[k]));
  return a;
}

QTensor qtensor(const json& j, const std::vector<SiteSpec>& sites, const std::string& field) {
  QTensor t(sites);
  if (!j.is_array() || j.size() != t.size())
    bad(field, "expected a flat array of " + std::to_string(t.size()) + " rationals");
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = rat(j[k], field + "[" + std::to_string(k) + "]");
  return t;
}

json qflat(const QTensor& t) {
  return flat(t, [](const Rational& q) { return to_string(q); });
}

void check_format(const json& j) {
  if (!j.is_object()) throw InputError("document must be a JSON object");
  const json& f = need(j, "format");
  if (!f.is_string() || f.get<std::string>() != kFormat) bad("format", std::string("must be \"") + kFormat + "\"");
}

const std::vector<SiteSpec> color_pair(int N) { return {color("c1", N), color("c2", N)}; }
const std::vector<SiteSpec> flavor_pair(int m) { return {flavor("f1", m), flavor("f2", m)}; }

BracketSpec bracket_from_json(const json& j) {
  const std::string kind = need(j, "kind").get<std::string>();
  int m = need_int(j, "m", 1, 64);
  BracketSpec s;
  s.m = m;
  auto read = [&](const char* key, int depth, std::vector<Rational>& dst) {
    dst.clear();
    unnest(need(j, key), m, depth, key, dst);
  };
  if (kind == "constant") {
    s = BracketSpec::constant(m);
    read("c", 2, s.cc);
  } else if (kind == "linear") {
    s = BracketSpec::linear(m);
    read("b", 3, s.bb);
  } else if (kind == "quadratic") {
    s = BracketSpec::quadratic(m);
    read("r", 4, s.rr);
    read("a", 4, s.aa);
  } else {
    bad("kind", "unknown kind '" + kind + "'");
  }
  validate(s);
  return s;
}

const std::vector<std::string> kAbcdAxes{"color1", "flavorI", "color2", "flavorII"};

ABCDSystem abcd_from_json(const json& j) {
  int N = need_int(j, "N", 1, 16), m = need_int(j, "m", 1, 16);
  if (j.contains("axes") && j["axes"] != json(kAbcdAxes)) bad("axes", "must be [\"color1\",\"flavorI\",\"color2\",\"flavorII\"]");
  const auto sites = abcd_sites(N, m);
  std::optional<ABCDSystem> built;
  if (j.contains("decoupled")) {
    const json& d = j["decoupled"];
    auto c = [&](const char* k) { return qtensor(need(d, k, "decoupled."), color_pair(N), std::string("decoupled.") + k); };
    auto f = [&](const char* k) { return qtensor(need(d, k, "decoupled."), flavor_pair(m), std::string("decoupled.") + k); };
    std::optional<QTensor> G;
    if (d.contains("G")) G = f("G");
    try {
      built = build_decoupled(c("colorA"), c("colorB"), c("colorC"), c("colorD"), f("F"), f("Rtilde"), G);
    } catch (const SingularError&) {
      bad("decoupled.F", "must be invertible");
    }
  }
  bool has_blocks = j.contains("A") || j.contains("B") || j.contains("C") || j.contains("D");
  if (!has_blocks) {
    if (!built) bad("A", "missing (give A, B, C, D or a decoupled section)");
    return *built;
  }
  ABCDSystem s;
  s.N = N;
  s.m = m;
  s.A = qtensor(need(j, "A"), sites, "A");
  s.B = qtensor(need(j, "B"), sites, "B");
  s.C = qtensor(need(j, "C"), sites, "C");
  s.D = qtensor(need(j, "D"), sites, "D");
  if (built) {
    const char* names[4] = {"A", "B", "C", "D"};
    const QTensor* mine[4] = {&s.A, &s.B, &s.C, &s.D};
    const QTensor* theirs[4] = {&built->A, &built->B, &built->C, &built->D};
    for (int k = 0; k < 4; ++k)
      if (!equal(*mine[k], *theirs[k])) bad(names[k], "disagrees with the decoupled section");
    s.parts = built->parts;
  }
  return s;
}

LTensor ltensor(const json& j, const std::vector<SiteSpec>& sites, int n, const std::string& field) {
  LTensor t(sites);
  if (!j.is_array() || j.size() != t.size())
    bad(field, "expected a flat array of " + std::to_string(t.size()) + " polynomials");
  for (std::size_t k = 0; k < t.size(); ++k) {
    try {
      t[k] = lam_from_json(j[k], n);
    } catch (const InputError& e) {
      bad(field + "[" + std::to_string(k) + "]", e.what());
    }
  }
  return t;
}

Shift weight(const json& j, int n, const std::string& field) {
  if (!j.is_array() || int(j.size()) != n) bad(field, "weight vectors have n entries");
  Shift v;
  for (std::size_t i = 0; i < j.size(); ++i) {
    Rational q = rat(j[i], field + "[" + std::to_string(i) + "]");
    if (q.get_den() != 1) bad(field, "weights are integers");
    v.push_back(q);
  }
  return trim(v);
}

json weight_json(const Shift& v, int n) {
  json a = json::array();
  for (int i = 0; i < n; ++i) a.push_back(to_string(std::size_t(i) < v.size() ? v[std::size_t(i)] : Rational(0)));
  return a;
}

DynSystem dyn_from_json(const json& j) {
  DynSystem s;
  s.N = need_int(j, "N", 1, 16);
  s.m = j.contains("m") ? need_int(j, "m", 0, 16) : 0;
  int n = need_int(j, "n", 1, 64);
  s.epsR = rat(need(j, "epsilonR"), "epsilonR");
  s.epsL = rat(need(j, "epsilonL"), "epsilonL");
  s.epsF = j.contains("epsilonF") ? rat(j["epsilonF"], "epsilonF") : Rational(-1);
  s.W.n = n;
  if (j.contains("weights")) {
    const json& w = j["weights"];
    const json& c = need(w, "color", "weights.");
    if (!c.is_array() || int(c.size()) != s.N) bad("weights.color", "needs one vector per color index");
    for (std::size_t i = 0; i < c.size(); ++i) s.W.color.push_back(weight(c[i], n, "weights.color[" + std::to_string(i) + "]"));
    if (s.m) {
      const json& f = need(w, "flavor", "weights.");
      if (!f.is_array() || int(f.size()) != s.m) bad("weights.flavor", "needs one vector per flavor index");
      for (std::size_t i = 0; i < f.size(); ++i)
        s.W.flavor.push_back(weight(f[i], n, "weights.flavor[" + std::to_string(i) + "]"));
    }
  } else {
    if (n < s.N + s.m) bad("n", "default weights need n >= N + m");
    s.W = WeightScheme::general_linear(s.N, s.m);
    s.W.n = n;
  }
  s.A = ltensor(need(j, "A"), s.sites(), n, "A");
  s.B = ltensor(need(j, "B"), s.sites(), n, "B");
  s.C = ltensor(need(j, "C"), s.sites(), n, "C");
  s.D = ltensor(need(j, "D"), s.sites(), n, "D");
  for (const auto& r : check_system_weights(s))
    if (!r.pass) bad(r.tag.substr(r.tag.size() - 1), "zero-weight condition fails at " + r.counterexample["entry"].get<std::string>());
  return s;
}

}  // namespace

json to_json(const BracketSpec& s) {
  json j{{"format", kFormat}};
  int m = s.m;
  switch (s.kind) {
    case BracketKind::constant:
      j["kind"] = "constant";
      j["m"] = m;
      j["c"] = nest(s.cc, m, 2);
      break;
    case BracketKind::linear:
      j["kind"] = "linear";
      j["m"] = m;
      j["b"] = nest(s.bb, m, 3);
      break;
    case BracketKind::quadratic:
      j["kind"] = "quadratic";
      j["m"] = m;
      j["r"] = nest(s.rr, m, 4);
      j["a"] = nest(s.aa, m, 4);
      break;
  }
  return j;
}

json to_json(const ABCDSystem& s) {
  json j{{"format", kFormat}, {"kind", "abcd"}, {"N", s.N}, {"m", s.m}, {"axes", kAbcdAxes}};
  j["A"] = qflat(s.A);
  j["B"] = qflat(s.B);
  j["C"] = qflat(s.C);
  j["D"] = qflat(s.D);
  if (s.parts) {
    const auto& p = *s.parts;
    j["decoupled"] = {{"colorA", qflat(p.colorA)}, {"colorB", qflat(p.colorB)}, {"colorC", qflat(p.colorC)},
                      {"colorD", qflat(p.colorD)}, {"F", qflat(p.F)},           {"Rtilde", qflat(p.Rtilde)},
                      {"G", qflat(p.G)}};
  }
  return j;
}

json to_json(const DynSystem& s) {
  json j{{"format", kFormat}, {"kind", "dynamical"}, {"N", s.N}, {"m", s.m}, {"n", s.W.n}};
  j["epsilonR"] = to_string(s.epsR);
  j["epsilonL"] = to_string(s.epsL);
  j["epsilonF"] = to_string(s.epsF);
  json c = json::array(), f = json::array();
  for (const auto& v : s.W.color) c.push_back(weight_json(v, s.W.n));
  for (const auto& v : s.W.flavor) f.push_back(weight_json(v, s.W.n));
  j["weights"] = {{"color", c}, {"flavor", f}};
  auto poly = [&](const LamPoly& p) { return lam_json(p, s.W.n); };
  j["A"] = flat(s.A, poly);
  j["B"] = flat(s.B, poly);
  j["C"] = flat(s.C, poly);
  j["D"] = flat(s.D, poly);
  return j;
}

json spec_to_json(const SpecValue& v) {
  return std::visit([](const auto& x) { return to_json(x); }, v);
}

SpecValue spec_from_json(const json& j) {
  check_format(j);
  const json& k = need(j, "kind");
  if (!k.is_string()) bad("kind", "must be a string");
  const std::string kind = k.get<std::string>();
  if (kind == "abcd") return abcd_from_json(j);
  if (kind == "dynamical") return dyn_from_json(j);
  return bracket_from_json(j);
}

SpecValue parse_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  try {
    return spec_from_json(j);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_spec(const SpecValue& v, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << spec_to_json(v).dump(2) << "\n";
}

std::string canonical_digest(const SpecValue& v) { return sha256_hex(spec_to_json(v).dump()); }

std::vector<json> catalog_read(const std::string& path) {
  std::vector<json> out;
  std::ifstream in(path);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (line.empty()) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      throw InputError(path + ":" + std::to_string(no) + ": " + e.what());
    }
  }
  return out;
}

bool catalog_append(const SpecValue& v, const std::vector<CheckReport>& reports, std::uint64_t seed,
                    const std::string& path) {
  const std::string digest = canonical_digest(v);
  for (const auto& rec : catalog_read(path))
    if (rec.value("digest", "") == digest) return false;
  json checks = json::array();
  for (const auto& r : reports)
    checks.push_back({{"tag", r.tag}, {"pass", r.pass}, {"digest", sha256_hex(r.to_json().dump())}});
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  json rec{{"digest", digest}, {"kind", spec_to_json(v)["kind"]}, {"spec", spec_to_json(v)},
           {"checks", checks}, {"seed", seed}, {"timestamp", stamp}};
  std::ofstream out(path, std::ios::app);
  if (!out) throw InputError("cannot append to '" + path + "'");
  out << rec.dump() << "\n";
  return true;
}

}  // namespace ybx
