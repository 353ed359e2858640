// Copyright 2026 The ybx Authors
// SPDX-License-Identifier: Apache-2.0

#include "ybx/shift.hpp"

#include <sstream>

namespace ybx {

Shift trim(Shift v) {
  while (!v.empty() && is_zero(v.back())) v.pop_back();
  return v;
}

Shift operator+(const Shift& a, const Shift& b) {
  Shift r = a.size() >= b.size() ? a : b;
  const Shift& s = a.size() >= b.size() ? b : a;
  for (std::size_t i = 0; i < s.size(); ++i) r[i] += s[i];
  return trim(std::move(r));
}

Shift operator*(const Rational& c, const Shift& v) {
  Shift r(v);
  for (auto& x : r) x *= c;
  return trim(std::move(r));
}

Shift negate(const Shift& v) { return Rational(-1) * v; }

LamPoly lambda(int i) {
  std::vector<int> e(std::size_t(i) + 1, 0);
  e.back() = 1;
  return LamPoly::monomial(e);
}

LamPoly shift_poly(const LamPoly& p, const Shift& v) {
  if (v.empty()) return p;
  LamPoly out;
  for (const auto& [e, c] : p.terms()) {
    LamPoly t(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      LamPoly f = lambda(int(i));
      if (i < v.size()) f += LamPoly(v[i]);
      for (int k = 0; k < e[i]; ++k) t *= f;
    }
    out += t;
  }
  return out;
}

std::string to_string(const LamPoly& p) {
  if (p.zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    os << (first ? "" : " + ") << to_string(c);
    first = false;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      os << "*l" << i + 1;
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

json lam_json(const LamPoly& p, int n) {
  json j = json::object();
  for (const auto& [e, c] : p.terms()) {
    std::string k;
    for (int i = 0; i < n; ++i) k += (i ? "," : "") + std::to_string(std::size_t(i) < e.size() ? e[std::size_t(i)] : 0);
    j[k] = to_string(c);
  }
  return j;
}

LamPoly lam_from_json(const json& j, int n) {
  if (!j.is_object()) throw InputError("polynomial must be an object of exponent strings");
  LamPoly p;
  for (const auto& [k, v] : j.items()) {
    std::vector<int> e;
    std::stringstream ss(k);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
        throw InputError("bad exponent string '" + k + "'");
      e.push_back(std::stoi(part));
    }
    if (int(e.size()) != n) throw InputError("exponent string '" + k + "' does not have n entries");
    if (!v.is_string()) throw InputError("coefficient of '" + k + "' must be a rational string");
    while (!e.empty() && e.back() == 0) e.pop_back();
    p += LamPoly::monomial(e, parse_rational(v.get<std::string>()));
  }
  return p;
}

const Shift& WeightScheme::w(const Axis& a, int i) const {
  const auto& table = a.kind == Kind::color ? color : flavor;
  if (i < 0 || std::size_t(i) >= table.size())
    throw InputError("weight scheme has no weight for index " + std::to_string(i + 1) + " of " + a.label());
  return table[std::size_t(i)];
}

WeightScheme WeightScheme::general_linear(int N, int m) {
  WeightScheme W;
  W.n = N + m;
  for (int i = 0; i < N; ++i) {
    Shift v(std::size_t(i) + 1);
    v.back() = 1;
    W.color.push_back(v);
  }
  for (int a = 0; a < m; ++a) {
    Shift v(std::size_t(N + a) + 1);
    v.back() = 1;
    W.flavor.push_back(v);
  }
  return W;
}

namespace {

LTensor shift_by_axis(const LTensor& M, int p, const Rational& eps, const WeightScheme& W) {
  LTensor r(M.axes());
  const Axis& ax = M.axes()[std::size_t(p)];
  for (std::size_t k = 0; k < M.size(); ++k) {
    if (M[k].zero()) continue;
    auto idx = M.unravel(k);
    r[k] = shift_poly(M[k], eps * W.w(ax, idx[std::size_t(p)]));
  }
  return r;
}

int require_axis(const LTensor& M, const std::string& site, Role role, const char* what) {
  int p = M.axis_pos(site, role);
  if (p < 0) throw InputError(std::string(what) + ": no " + (role == Role::row ? "row" : "column") + " index on '" + site + "'");
  return p;
}

SiteSpec site_of(const LTensor& M, const std::string& name) {
  for (const auto& s : M.sites())
    if (s.name == name) return s;
  throw InputError("no site '" + name + "'");
}

std::vector<SiteSpec> with_site(std::vector<SiteSpec> s, const SiteSpec& a) {
  s.push_back(a);
  return s;
}

}  // namespace

LTensor shift_row(const LTensor& M, const std::string& site, const Rational& eps, const WeightScheme& W) {
  return shift_by_axis(M, require_axis(M, site, Role::row, "shift_row"), eps, W);
}

LTensor shift_col(const LTensor& M, const std::string& site, const Rational& eps, const WeightScheme& W) {
  return shift_by_axis(M, require_axis(M, site, Role::col, "shift_col"), eps, W);
}

LTensor shift_vec(const LTensor& K, const std::string& site, const Rational& eps, const WeightScheme& W) {
  int r = K.axis_pos(site, Role::row), c = K.axis_pos(site, Role::col);
  if ((r < 0) == (c < 0)) throw InputError("shift_vec: '" + site + "' is not a single vector index");
  return shift_by_axis(K, r >= 0 ? r : c, eps, W);
}

LTensor shift_outside(const LTensor& M, const SiteSpec& a, const Rational& eps, const WeightScheme& W) {
  if (M.has_site(a.name)) throw InputError("shift_outside: the matrix acts on '" + a.name + "'");
  LTensor E = embed(M, with_site(M.sites(), a));
  return shift_col(E, a.name, eps, W);
}

CheckReport check_zero_weight(const LTensor& M, const std::vector<std::pair<std::string, Rational>>& sig,
                              const WeightScheme& W) {
  CheckReport rep;
  rep.tag = "zero-weight";
  std::vector<std::tuple<int, int, Rational>> ax;
  for (const auto& [s, e] : sig)
    ax.emplace_back(require_axis(M, s, Role::row, "zero-weight"), require_axis(M, s, Role::col, "zero-weight"), e);
  for (std::size_t k = 0; k < M.size() && rep.pass; ++k) {
    if (M[k].zero()) continue;
    auto idx = M.unravel(k);
    Shift tot;
    for (const auto& [r, c, e] : ax) {
      tot = tot + e * W.w(M.axes()[std::size_t(r)], idx[std::size_t(r)]);
      tot = tot + (-e) * W.w(M.axes()[std::size_t(c)], idx[std::size_t(c)]);
    }
    if (!tot.empty()) {
      json w = json::array();
      for (const auto& x : tot) w.push_back(to_string(x));
      rep.fail({{"entry", index_string(M, k)}, {"value", to_string(M[k])}, {"weight", w}});
    }
  }
  return rep;
}

LTensor cross_shift(const LTensor& M, const std::string& a, const Rational& ea, const std::string& b,
                    const Rational& eb, const WeightScheme& W) {
  CheckReport z = check_zero_weight(M, {{a, ea}, {b, eb}}, W);
  if (!z.pass) throw InputError("cross_shift: zero-weight condition violated at " + z.counterexample["entry"].get<std::string>());
  return shift_row(shift_row(M, a, -ea, W), b, -eb, W);
}

LTensor cross_shift_inverse(const LTensor& Mt, const std::string& a, const Rational& ea, const std::string& b,
                            const Rational& eb, const WeightScheme& W) {
  CheckReport z = check_zero_weight(Mt, {{a, ea}, {b, eb}}, W);
  if (!z.pass) throw InputError("cross_shift: zero-weight condition violated at " + z.counterexample["entry"].get<std::string>());
  return shift_row(shift_row(Mt, a, ea, W), b, eb, W);
}

LTensor conjug_A(const LTensor& A, const Rational& eR, const WeightScheme& W) { return cross_shift(A, "c1", eR, "c2", eR, W); }
LTensor conjug_D(const LTensor& D, const Rational& eL, const WeightScheme& W) { return cross_shift(D, "c1", eL, "c2", eL, W); }
LTensor conjug_B(const LTensor& B, const Rational& eR, const Rational& eL, const WeightScheme& W) {
  return cross_shift(B, "c1", eL, "c2", -eR, W);
}
LTensor conjug_C(const LTensor& C, const Rational& eR, const Rational& eL, const WeightScheme& W) {
  return cross_shift(C, "c2", eL, "c1", -eR, W);
}

// ---------------------------------------------------------------------------
// DynOp
// ---------------------------------------------------------------------------

DynOp::DynOp(int c) {
  if (c) terms_[OpKey{}] = LamPoly(c);
}

DynOp::DynOp(const LamPoly& c) {
  if (!c.zero()) terms_[OpKey{}] = c;
}

DynOp DynOp::translation(const Shift& v) {
  DynOp d;
  d.terms_[OpKey{{}, trim(v)}] = LamPoly(1);
  return d;
}

DynOp DynOp::k(int id, const Shift& shift) {
  DynOp d;
  d.terms_[OpKey{{KSym{id, trim(shift)}}, {}}] = LamPoly(1);
  return d;
}

void DynOp::add(const OpKey& k, const LamPoly& c) {
  if (c.zero()) return;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, c);
  } else {
    it->second += c;
    if (it->second.zero()) terms_.erase(it);
  }
}

DynOp operator+(DynOp a, const DynOp& b) {
  for (const auto& [k, c] : b.terms_) a.add(k, c);
  return a;
}

DynOp operator-(DynOp a, const DynOp& b) {
  for (const auto& [k, c] : b.terms_) a.add(k, -c);
  return a;
}

// (c1 W1 T1)(c2 W2 T2) = c1 c2(λ+T1) W1 W2(+T1) T_{T1+T2}
DynOp operator*(const DynOp& a, const DynOp& b) {
  DynOp r;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) {
      OpKey k;
      k.word = ka.word;
      for (const auto& s : kb.word) k.word.push_back(KSym{s.id, s.shift + ka.T});
      k.T = ka.T + kb.T;
      r.add(k, ca * shift_poly(cb, ka.T));
    }
  return r;
}

std::string to_string(const DynOp& d) {
  if (d.zero()) return "0";
  std::ostringstream os;
  bool first = true;
  auto vec = [](const Shift& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
    return s + ")";
  };
  for (const auto& [k, c] : d.terms()) {
    os << (first ? "" : " + ") << "(" << to_string(c) << ")";
    first = false;
    for (const auto& s : k.word) os << "*K" << s.id << vec(s.shift);
    if (!k.T.empty()) os << "*T" << vec(k.T);
  }
  return os.str();
}

OTensor to_op(const LTensor& t) {
  return map_entries<DynOp>(t, [](const LamPoly& p) { return DynOp(p); });
}

OTensor exp_shift(const SiteSpec& a, const Rational& eps, const WeightScheme& W) {
  SiteSpec s = a;
  s.row = s.col = true;
  OTensor E(std::vector<SiteSpec>{s});
  Axis ax{s.name, Role::row, s.dim, s.kind};
  for (int i = 0; i < s.dim; ++i) E.at({i, i}) = DynOp::translation(eps * W.w(ax, i));
  return E;
}

LTensor from_op(const OTensor& t) {
  LTensor r(t.axes());
  for (std::size_t k = 0; k < t.size(); ++k)
    for (const auto& [key, c] : t[k].terms()) {
      if (!key.word.empty() || !key.T.empty())
        throw InputError("operator entry " + index_string(t, k) + " is not a c-number: " + to_string(t[k]));
      r[k] += c;
    }
  return r;
}

LTensor sandwich_row(const LTensor& M, const std::string& site, const Rational& eps, const WeightScheme& W) {
  SiteSpec a = site_of(M, site);
  OTensor X = mul_plain(exp_shift(a, eps, W), to_op(M));
  X = partial_transpose(X, {site});
  X = mul_plain(X, exp_shift(a, -eps, W));
  return align_to(from_op(partial_transpose(X, {site})), M);
}

LTensor sandwich_col(const LTensor& M, const std::string& site, const Rational& eps, const WeightScheme& W) {
  SiteSpec a = site_of(M, site);
  OTensor X = partial_transpose(mul_plain(to_op(M), exp_shift(a, -eps, W)), {site});
  X = mul_plain(exp_shift(a, eps, W), X);
  return align_to(from_op(partial_transpose(X, {site})), M);
}

LTensor sandwich_outside(const LTensor& M, const SiteSpec& a, const Rational& eps, const WeightScheme& W) {
  if (M.has_site(a.name)) throw InputError("sandwich_outside: the matrix acts on '" + a.name + "'");
  OTensor X = mul_plain(mul_plain(exp_shift(a, eps, W), to_op(M)), exp_shift(a, -eps, W));
  return from_op(X);
}

// ---------------------------------------------------------------------------
// identity suite
// ---------------------------------------------------------------------------

LamPoly random_lampoly(Rng& g, int n, int degree, int coef) {
  LamPoly p;
  int terms = rand_int(g, 0, 3);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> e(std::size_t(n), 0);
    int d = rand_int(g, 0, degree);
    for (int k = 0; k < d; ++k) ++e[std::size_t(rand_int(g, 0, n - 1))];
    while (!e.empty() && e.back() == 0) e.pop_back();
    p += LamPoly::monomial(e, rand_int(g, -coef, coef));
  }
  return p;
}

LTensor random_ltensor(const std::vector<SiteSpec>& sites, Rng& g, int n, int degree) {
  LTensor t(sites);
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = random_lampoly(g, n, degree);
  return t;
}

LTensor zero_weight_part(const LTensor& M, const std::vector<std::pair<std::string, Rational>>& sig,
                         const WeightScheme& W) {
  LTensor r = M;
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (r[k].zero()) continue;
    auto idx = r.unravel(k);
    Shift tot;
    for (const auto& [s, e] : sig) {
      int p = r.axis_pos(s, Role::row), q = r.axis_pos(s, Role::col);
      tot = tot + e * W.w(r.axes()[std::size_t(p)], idx[std::size_t(p)]);
      tot = tot + (-e) * W.w(r.axes()[std::size_t(q)], idx[std::size_t(q)]);
    }
    if (!tot.empty()) r[k] = LamPoly();
  }
  return r;
}

namespace {

struct Sample {
  int N = 1, n = 1;
  WeightScheme W;
  Rational eps;
};

Sample draw(Rng& g, const ShiftSuiteOptions& o) {
  Sample s;
  s.N = rand_int(g, 1, o.max_N);
  s.n = rand_int(g, 1, o.max_n);
  if (s.n >= s.N) {
    s.W = WeightScheme::general_linear(s.N);
    s.W.n = s.n;
  } else {
    s.W.n = s.n;
    for (int i = 0; i < s.N; ++i) {
      Shift v(std::size_t(s.n));
      for (auto& x : v) x = rand_int(g, -1, 1);
      s.W.color.push_back(trim(v));
    }
  }
  static const Rational eps[] = {-2, -1, Rational(-1, 2), Rational(1, 2), 1, 2, Rational(3, 2)};
  s.eps = eps[rand_int(g, 0, 6)];
  return s;
}

std::vector<SiteSpec> colors(int N, std::initializer_list<const char*> names) {
  std::vector<SiteSpec> v;
  for (const char* n : names) v.push_back(color(n, N));
  return v;
}

json diff(const LTensor& a, const LTensor& b) {
  LTensor d = a - align_to(b, a);
  std::size_t k = first_nonzero(d);
  if (k == d.size()) return nullptr;
  return {{"entry", index_string(d, k)}, {"lhs", to_string(a[k])}, {"rhs", to_string(align_to(b, a)[k])}};
}

// diagonal on site a, arbitrary elsewhere
LTensor diagonal_on(LTensor D, const std::string& a) {
  int r = D.axis_pos(a, Role::row), c = D.axis_pos(a, Role::col);
  for (std::size_t k = 0; k < D.size(); ++k) {
    auto idx = D.unravel(k);
    if (idx[std::size_t(r)] != idx[std::size_t(c)]) D[k] = LamPoly();
  }
  return D;
}

}  // namespace

std::vector<CheckReport> check_shift_identities(const ShiftSuiteOptions& o) {
  Rng g(o.seed);
  std::vector<CheckReport> out;
  auto run = [&](const std::string& tag, auto body) {
    Stopwatch sw;
    CheckReport rep;
    rep.tag = tag;
    int done = 0;
    for (int t = 0; t < o.samples && rep.pass; ++t, ++done) {
      Sample s = draw(g, o);
      json d = body(s);
      if (!d.is_null()) {
        d["sample"] = t;
        d["N"] = s.N;
        d["n"] = s.n;
        d["eps"] = to_string(s.eps);
        rep.fail(d);
      }
    }
    rep.details["samples"] = done;
    rep.elapsed_ms = sw.ms();
    out.push_back(rep);
    return out.size() - 1;
  };
  const int deg = o.max_degree;

  // the entrywise forms against the literal sandwiches
  run("sandwich", [&](const Sample& s) -> json {
    LTensor M = random_ltensor(colors(s.N, {"c1", "c2"}), g, s.n, deg);
    json d = diff(shift_row(M, "c1", s.eps, s.W), sandwich_row(M, "c1", s.eps, s.W));
    if (d.is_null()) d = diff(shift_col(M, "c2", s.eps, s.W), sandwich_col(M, "c2", s.eps, s.W));
    return d;
  });
  run("slsc", [&](const Sample& s) -> json {
    LTensor M = random_ltensor(colors(s.N, {"c1", "c2"}), g, s.n, deg);
    const char* a = rand_int(g, 0, 1) ? "c1" : "c2";
    return diff(partial_transpose(shift_row(M, a, s.eps, s.W), {a}),
                shift_col(partial_transpose(M, {a}), a, s.eps, s.W));
  });
  run("inout", [&](const Sample& s) -> json {
    LTensor M = random_ltensor(colors(s.N, {"c1", "c2"}), g, s.n, deg);
    SiteSpec a = color("c3", s.N);
    LTensor lit = sandwich_outside(M, a, s.eps, s.W);
    LTensor padded = embed(M, {color("c1", s.N), color("c2", s.N), a});
    json d = diff(lit, shift_outside(M, a, s.eps, s.W));
    if (d.is_null()) d = diff(lit, shift_col(padded, "c3", s.eps, s.W));
    if (d.is_null()) d = diff(lit, shift_row(padded, "c3", s.eps, s.W));
    return d;
  });
  std::size_t dc = run("diagshc", [&](const Sample& s) -> json {
    LTensor M = random_ltensor(colors(s.N, {"c1", "c2"}), g, s.n, deg);
    LTensor D = diagonal_on(random_ltensor(colors(s.N, {"c1", "c2"}), g, s.n, deg), "c1");
    return diff(shift_col(mul_plain(M, D), "c1", s.eps, s.W),
                mul_plain(shift_col(M, "c1", s.eps, s.W), shift_col(D, "c1", s.eps, s.W)));
  });
  std::size_t dl = run("diagshl", [&](const Sample& s) -> json {
    LTensor M = random_ltensor(colors(s.N, {"c1", "c2"}), g, s.n, deg);
    LTensor D = diagonal_on(random_ltensor(colors(s.N, {"c1", "c2"}), g, s.n, deg), "c1");
    return diff(shift_row(mul_plain(D, M), "c1", s.eps, s.W),
                mul_plain(shift_row(D, "c1", s.eps, s.W), shift_row(M, "c1", s.eps, s.W)));
  });
  // the doubly shifted reading (M^{sc} D)^{sc}: expected to fail, reported only
  {
    Rng h(o.seed + 7);
    int fails = 0;
    for (int t = 0; t < 20; ++t) {
      Sample s = draw(h, o);
      LTensor M = random_ltensor(colors(s.N, {"c1", "c2"}), h, s.n, deg);
      LTensor D = diagonal_on(random_ltensor(colors(s.N, {"c1", "c2"}), h, s.n, deg), "c1");
      LTensor lhs = shift_col(mul_plain(M, D), "c1", s.eps, s.W);
      LTensor rhs = shift_col(mul_plain(shift_col(M, "c1", s.eps, s.W), D), "c1", s.eps, s.W);
      if (!diff(lhs, rhs).is_null()) ++fails;
    }
    out[dc].details["double_shift_reading_failures"] = fails;
    out[dl].details["reading"] = "(D M)^{sr} = D^{sr} M^{sr}";
    out[dc].details["reading"] = "(M D)^{sc} = M^{sc} D^{sc}";
  }
  run("fuse1", [&](const Sample& s) -> json {
    LTensor Nm = random_ltensor(colors(s.N, {"c2"}), g, s.n, deg);
    LTensor M = random_ltensor(colors(s.N, {"c1", "c2"}), g, s.n, deg);
    SiteSpec a = color("c1", s.N);
    return diff(mul_plain(shift_outside(Nm, a, s.eps, s.W), shift_row(M, "c1", s.eps, s.W)),
                shift_row(mul_plain(Nm, M), "c1", s.eps, s.W));
  });
  run("fuse2", [&](const Sample& s) -> json {
    LTensor Nm = random_ltensor(colors(s.N, {"c2"}), g, s.n, deg);
    LTensor M = random_ltensor(colors(s.N, {"c1", "c2"}), g, s.n, deg);
    SiteSpec a = color("c1", s.N);
    return diff(mul_plain(shift_col(M, "c1", s.eps, s.W), shift_outside(Nm, a, s.eps, s.W)),
                shift_col(mul_plain(M, Nm), "c1", s.eps, s.W));
  });
  run("fuse", [&](const Sample& s) -> json {
    auto sites = colors(s.N, {"c1", "c2"});
    LTensor M = zero_weight_part(random_ltensor(sites, g, s.n, deg), {{"c1", 1}, {"c2", 1}}, s.W);
    LTensor C = random_ltensor(sites, g, s.n, deg);
    auto sc2 = [&](const LTensor& X) { return shift_col(shift_col(X, "c1", s.eps, s.W), "c2", s.eps, s.W); };
    auto sr2 = [&](const LTensor& X) { return shift_row(shift_row(X, "c1", s.eps, s.W), "c2", s.eps, s.W); };
    json d = diff(sc2(mul_plain(C, M)), mul_plain(sc2(C), sc2(M)));
    if (d.is_null()) d = diff(sr2(mul_plain(M, C)), mul_plain(sr2(M), sr2(C)));
    return d;
  });
  run("crossshift", [&](const Sample& s) -> json {
    auto sites = colors(s.N, {"c1", "c2"});
    Rational ea = s.eps, eb = rand_int(g, 0, 1) ? s.eps : -s.eps;
    LTensor M = zero_weight_part(random_ltensor(sites, g, s.n, deg), {{"c1", ea}, {"c2", eb}}, s.W);
    LTensor Mt = cross_shift(M, "c1", ea, "c2", eb, s.W);
    json d = diff(cross_shift_inverse(Mt, "c1", ea, "c2", eb, s.W), M);
    if (!d.is_null()) return d;
    // e^{ε_a h_a∂} M̃ e^{−ε_b h_b∂} = e^{−ε_b h_b∂} M e^{ε_a h_a∂} as operators
    OTensor Ea = exp_shift(sites[0], ea, s.W), Eb = exp_shift(sites[1], -eb, s.W);
    OTensor lhs = mul_plain(mul_plain(Ea, to_op(Mt)), Eb), rhs = mul_plain(mul_plain(Eb, to_op(M)), Ea);
    OTensor dd = lhs - align_to(rhs, lhs);
    std::size_t k = first_nonzero(dd);
    if (k != dd.size()) return {{"entry", index_string(dd, k)}, {"operator_difference", to_string(dd[k])}};
    return nullptr;
  });
  return out;
}

}  // namespace ybx
