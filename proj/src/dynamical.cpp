// Copyright 2026 The ybx Authors
// SPDX-License-Identifier: Apache-2.0

#include "ybx/dynamical.hpp"

#include <functional>
#include <set>

namespace ybx {

std::vector<SiteSpec> DynSystem::sites() const {
  if (!m) return {color("c1", N), color("c2", N)};
  return {color("c1", N), flavor("f1", m), color("c2", N), flavor("f2", m)};
}

std::string DynSystem::k_name(int id) const {
  int mm = m ? m : 1;
  int alpha = id % mm, ij = id / mm;
  std::string s = "K^{" + std::to_string(ij / N + 1) + std::to_string(ij % N + 1) + "}";
  if (m) s += "_" + std::to_string(alpha + 1);
  return s;
}

std::array<Signature, 4> zero_weight_signatures(const DynSystem& s) {
  const Rational &R = s.epsR, &L = s.epsL;
  std::array<Signature, 4> sig{Signature{{"c1", R}, {"c2", R}}, Signature{{"c1", L}, {"c2", -R}},
                               Signature{{"c1", R}, {"c2", -L}}, Signature{{"c1", L}, {"c2", L}}};
  if (s.m)
    for (int k = 0; k < 4; ++k) {
      sig[std::size_t(k)].push_back({"f1", s.epsF});
      sig[std::size_t(k)].push_back({"f2", (k == 1 || k == 2) ? -s.epsF : s.epsF});
    }
  return sig;
}

std::vector<CheckReport> check_system_weights(const DynSystem& s) {
  auto sig = zero_weight_signatures(s);
  const LTensor* M[4] = {&s.A, &s.B, &s.C, &s.D};
  const char* names[4] = {"A", "B", "C", "D"};
  std::vector<CheckReport> out;
  for (int k = 0; k < 4; ++k) {
    out.push_back(check_zero_weight(*M[k], sig[std::size_t(k)], s.W));
    out.back().tag = std::string("zero-weight ") + names[k];
  }
  return out;
}

DynSystem random_dyn_system(int N, int m, const Rational& eR, const Rational& eL, Rng& g, int degree, int n,
                            const Rational& eF) {
  if (N < 1 || m < 0) throw InputError("random_dyn_system: need N >= 1 and m >= 0");
  DynSystem s;
  s.N = N;
  s.m = m;
  s.epsR = eR;
  s.epsL = eL;
  s.epsF = eF;
  s.W = WeightScheme::general_linear(N, m);
  if (n) {
    if (n < N + m) throw InputError("dynamical rank n must be at least N + m under general-linear weights");
    s.W.n = n;
  }
  auto sig = zero_weight_signatures(s);
  LTensor* M[4] = {&s.A, &s.B, &s.C, &s.D};
  for (int k = 0; k < 4; ++k)
    *M[k] = zero_weight_part(random_ltensor(s.sites(), g, s.W.n, degree), sig[std::size_t(k)], s.W);
  return s;
}

// ---------------------------------------------------------------------------
// normal form
// ---------------------------------------------------------------------------

namespace {

// lexicographic on zero-padded vectors, so the order is translation invariant
bool padded_less(const Shift& a, const Shift& b) {
  std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    Rational x = i < a.size() ? a[i] : Rational(0), y = i < b.size() ? b[i] : Rational(0);
    if (x != y) return x < y;
  }
  return false;
}

std::map<std::vector<int>, DynOp> by_site(const OTensor& t, const std::vector<std::string>& sites) {
  std::vector<int> pos;
  for (const auto& s : sites) {
    int r = t.axis_pos(s, Role::row), c = t.axis_pos(s, Role::col);
    if ((r < 0) == (c < 0)) throw InputError("normalize: site '" + s + "' is not a single index of the relation");
    pos.push_back(r >= 0 ? r : c);
  }
  if (pos.size() != t.rank()) throw InputError("normalize: relation has indices outside the declared sites");
  std::map<std::vector<int>, DynOp> out;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k].zero()) continue;
    auto idx = t.unravel(k);
    std::vector<int> key;
    for (int p : pos) key.push_back(idx[std::size_t(p)]);
    out[key] = t[k];
  }
  return out;
}

std::string idx_text(const std::vector<std::string>& sites, const std::vector<int>& idx) {
  std::string s;
  for (std::size_t i = 0; i < sites.size(); ++i) s += (i ? " " : "") + sites[i] + "=" + std::to_string(idx[i] + 1);
  return s;
}

}  // namespace

std::size_t FormalRelation::term_count() const {
  std::size_t n = 0;
  for (const auto& [k, v] : entries) n += v.size();
  return n;
}

FormalRelation normalize(const OTensor& lhs, const OTensor& rhs, const std::vector<std::string>& sites) {
  FormalRelation rel;
  rel.sites = sites;
  auto L = by_site(lhs, sites), R = by_site(rhs, sites);
  for (auto& [k, v] : R) L[k] = L[k] - v;
  for (const auto& [idx, op] : L) {
    if (op.zero()) continue;
    const Shift& T = op.terms().begin()->first.T;
    for (const auto& [key, c] : op.terms())
      if (key.T != T)
        throw WeightObstruction("entry " + idx_text(sites, idx) +
                                " carries different residual shift operators; they cannot be absorbed");
    Shift u;
    bool first = true;
    for (const auto& [key, c] : op.terms())
      for (const auto& s : key.word)
        if (first || padded_less(s.shift, u)) {
          u = s.shift;
          first = false;
        }
    Shift mu = negate(u);
    auto& terms = rel.entries[idx];
    for (const auto& [key, c] : op.terms()) {
      std::vector<KSym> w;
      for (const auto& s : key.word) w.push_back(KSym{s.id, s.shift + mu});
      LamPoly& dst = terms[w];
      dst += shift_poly(c, mu);
      if (dst.zero()) terms.erase(w);
    }
    if (terms.empty()) rel.entries.erase(idx);
  }
  return rel;
}

OTensor evaluate_chain(const std::vector<OTensor>& chain, Rng* g) {
  if (chain.empty()) throw InputError("empty factor chain");
  std::vector<OTensor> v = chain;
  while (v.size() > 1) {
    // right to left by default keeps the partial products small
    std::size_t i = g ? std::size_t(rand_int(*g, 0, int(v.size()) - 2)) : v.size() - 2;
    v[i] = mul_plain(v[i], v[i + 1]);
    v.erase(v.begin() + std::ptrdiff_t(i) + 1);
  }
  return v.front();
}

json relation_json(const FormalRelation& r, const DynSystem& s) {
  auto vec = [&](const Shift& v) {
    json a = json::array();
    for (std::size_t i = 0; i < std::size_t(s.W.n); ++i) a.push_back(to_string(i < v.size() ? v[i] : Rational(0)));
    return a;
  };
  json entries = json::array();
  for (const auto& [idx, terms] : r.entries) {
    json e;
    json ix = json::object();
    for (std::size_t i = 0; i < r.sites.size(); ++i) ix[r.sites[i]] = idx[i] + 1;
    e["index"] = ix;
    json ts = json::array();
    for (const auto& [w, c] : terms) {
      json word = json::array();
      for (const auto& k : w) word.push_back({{"K", s.k_name(k.id)}, {"shift", vec(k.shift)}});
      ts.push_back({{"word", word}, {"coefficient", lam_json(c, s.W.n)}});
    }
    e["terms"] = ts;
    entries.push_back(e);
  }
  return {{"sites", r.sites}, {"entries", entries}, {"terms", r.term_count()}};
}

std::string relation_digest(const FormalRelation& r, const DynSystem& s) {
  return sha256_hex(relation_json(r, s).dump());
}

json first_difference(const FormalRelation& a, const FormalRelation& b, const DynSystem& s) {
  std::set<std::vector<int>> keys;
  for (const auto& [k, v] : a.entries) keys.insert(k);
  for (const auto& [k, v] : b.entries) keys.insert(k);
  for (const auto& k : keys) {
    auto ia = a.entries.find(k), ib = b.entries.find(k);
    static const std::map<std::vector<KSym>, LamPoly> none;
    const auto& ta = ia == a.entries.end() ? none : ia->second;
    const auto& tb = ib == b.entries.end() ? none : ib->second;
    if (ta == tb) continue;
    FormalRelation ea, eb;
    ea.sites = eb.sites = a.sites;
    if (!ta.empty()) ea.entries[k] = ta;
    if (!tb.empty()) eb.entries[k] = tb;
    return {{"entry", idx_text(a.sites, k)},
            {"first", relation_json(ea, s)["entries"]},
            {"second", relation_json(eb, s)["entries"]}};
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// relation builders
// ---------------------------------------------------------------------------

namespace {

LTensor place(const DynSystem& s, const LTensor& M, const std::string& c1, const std::string& c2) {
  std::map<std::string, std::string> m{{"c1", c1}, {"c2", c2}};
  if (s.m) {
    m["f1"] = "I";
    m["f2"] = "II";
  }
  return rename_sites(M, m);
}

SiteSpec site(const DynSystem& s, const std::string& n) {
  if (n == "I" || n == "II") return flavor(n, s.m);
  return color(n, s.N);
}

// K entries on a (row), b (row or column as given), optional flavor row site,
// and diagonal outside-shift sites.  inner(i, j, alpha) gives the inside shift.
OTensor k_tensor(const DynSystem& s, const std::string& a, SiteSpec b, const std::string& fl,
                 const std::vector<std::pair<std::string, Rational>>& outside,
                 const std::function<Shift(int, int, int)>& inner) {
  std::vector<SiteSpec> sites{as_vector(site(s, a)), b};
  if (!fl.empty()) sites.push_back(as_vector(site(s, fl)));
  for (const auto& [o, e] : outside) sites.push_back(site(s, o));
  OTensor K(sites);
  std::size_t base = fl.empty() ? 2 : 3;
  for (std::size_t k = 0; k < K.size(); ++k) {
    auto idx = K.unravel(k);
    bool diag = true;
    Shift v = inner(idx[0], idx[1], fl.empty() ? 0 : idx[2]);
    for (std::size_t o = 0; o < outside.size() && diag; ++o) {
      int r = idx[base + 2 * o], c = idx[base + 2 * o + 1];
      if (r != c) diag = false;
      else v = v + outside[o].second * s.W.w(K.axes()[base + 2 * o], r);
    }
    if (diag) K[k] = DynOp::k(s.k_id(idx[0], idx[1], fl.empty() ? 0 : idx[2]), v);
  }
  return K;
}

Shift no_shift(int, int, int) { return {}; }

}  // namespace

// A12 e^{-R h2} K11'^{t1'} e^{R h2} B1'2 e^{L h1'} K22'^{t2'}
std::vector<OTensor> dyr1_chain_lhs(const DynSystem& s) {
  if (s.m) throw InputError("the explicit-exponential relation is built for unflavored systems");
  const Rational &R = s.epsR, &L = s.epsL;
  return {to_op(place(s, s.A, "1", "2")),
          exp_shift(site(s, "2"), -R, s.W),
          k_tensor(s, "1", as_covector(site(s, "1p")), "", {}, no_shift),
          exp_shift(site(s, "2"), R, s.W),
          to_op(place(s, s.B, "1p", "2")),
          exp_shift(site(s, "1p"), L, s.W),
          k_tensor(s, "2", as_covector(site(s, "2p")), "", {}, no_shift)};
}

// e^{-R h1} K22'^{t2'} e^{R h1} C12' e^{L h2'} K11'^{t1'} e^{-L h2'} D1'2' e^{L h1'}
std::vector<OTensor> dyr1_chain_rhs(const DynSystem& s) {
  if (s.m) throw InputError("the explicit-exponential relation is built for unflavored systems");
  const Rational &R = s.epsR, &L = s.epsL;
  return {exp_shift(site(s, "1"), -R, s.W),
          k_tensor(s, "2", as_covector(site(s, "2p")), "", {}, no_shift),
          exp_shift(site(s, "1"), R, s.W),
          to_op(place(s, s.C, "1", "2p")),
          exp_shift(site(s, "2p"), L, s.W),
          k_tensor(s, "1", as_covector(site(s, "1p")), "", {}, no_shift),
          exp_shift(site(s, "2p"), -L, s.W),
          to_op(place(s, s.D, "1p", "2p")),
          exp_shift(site(s, "1p"), L, s.W)};
}

namespace {

const std::vector<std::string> kColorSites{"1", "2", "1p", "2p"};
const std::vector<std::string> kFlavorSites{"1", "2", "1p", "2p", "I", "II"};

// Both bivector relations share this builder: the flavorless one is the
// narrow reading with no flavor spaces.
std::pair<std::vector<OTensor>, std::vector<OTensor>> bivector_chains(const DynSystem& s, DtralMode mode,
                                                                      const BivectorReading& rd) {
  const Rational &R = s.epsR, &L = s.epsL, &F = s.epsF;
  const bool fl = s.m > 0, broad = fl && mode == DtralMode::broad;
  const Rational srL = rd.sign_sr * L;
  // sr_{1'} (and sr_I in the broad reading)
  auto sr1 = [&](const LTensor& X) {
    LTensor Y = shift_row(X, "1p", srL, s.W);
    return broad ? shift_row(Y, "I", srL, s.W) : Y;
  };
  auto sr2 = [&](const LTensor& X) {
    LTensor Y = shift_row(X, "2p", srL, s.W);
    return broad ? shift_row(Y, "II", srL, s.W) : Y;
  };
  auto out = [&](const LTensor& X, const std::string& a, const Rational& e) {
    return shift_outside(X, site(s, a), e, s.W);
  };
  std::set<std::string> T1{"1p"}, T2{"2p"};
  if (fl) {
    T1.insert("I");
    T2.insert("II");
  }
  std::set<std::string> T12 = T1;
  T12.insert(T2.begin(), T2.end());

  // K̄^{ij}(λ) = K^{ij}(λ + τ L w(j)), plus the flavor index in the broad reading
  auto kbar = [&](const std::string& vs, const std::string& flv) {
    return [&, vs, flv](int, int j, int alpha) {
      Axis ax{vs, Role::row, s.N, Kind::color};
      Shift v = Rational(rd.sign_kbar) * L * s.W.w(ax, j);
      if (broad) v = v + Rational(rd.sign_kbar) * L * s.W.w(Axis{flv, Role::row, s.m, Kind::flavor}, alpha);
      return v;
    };
  };
  const std::string fI = fl ? "I" : "", fII = fl ? "II" : "";
  std::vector<std::pair<std::string, Rational>> o11{{"2", -R}, {"2p", -L}}, o22{{"1", -R}, {"1p", -L}};
  if (fl) {
    o11.push_back({"II", -F});
    o22.push_back({"I", -F});
  }

  std::vector<OTensor> lhs{
      to_op(out(out(place(s, s.A, "1", "2"), "1p", -L), "2p", -L)),
      to_op(sr1(out(partial_transpose(place(s, s.B, "1p", "2"), T1), "2p", -L))),
      k_tensor(s, "1", as_vector(site(s, "1p")), fI, o11, kbar("1p", "I")),
      k_tensor(s, "2", as_vector(site(s, "2p")), fII, {}, kbar("2p", "II"))};
  std::vector<OTensor> rhs{
      to_op(sr2(sr1(partial_transpose(place(s, s.D, "1p", "2p"), T12)))),
      to_op(sr2(out(partial_transpose(place(s, s.C, "1", "2p"), T2), "1p", -L))),
      k_tensor(s, "2", as_vector(site(s, "2p")), fII, o22, kbar("2p", "II")),
      k_tensor(s, "1", as_vector(site(s, "1p")), fI, {}, kbar("1p", "I"))};
  return {lhs, rhs};
}

}  // namespace

FormalRelation dyr1_relation(const DynSystem& s, Rng* shuffle) {
  return normalize(evaluate_chain(dyr1_chain_lhs(s), shuffle), evaluate_chain(dyr1_chain_rhs(s), shuffle),
                   kColorSites);
}

FormalRelation dyr_relation(const DynSystem& s, const BivectorReading& rd, Rng* shuffle) {
  if (s.m) throw InputError("the bivector relation is built for unflavored systems; use dtral");
  auto [l, r] = bivector_chains(s, DtralMode::narrow, rd);
  return normalize(evaluate_chain(l, shuffle), evaluate_chain(r, shuffle), kColorSites);
}

CheckReport check_dyr_equivalence(const DynSystem& s, const BivectorReading& rd) {
  Stopwatch sw;
  for (const auto& w : check_system_weights(s))
    if (!w.pass) throw InputError(w.tag + " violated at " + w.counterexample.dump());
  CheckReport rep;
  rep.tag = "dyr-equivalence";
  FormalRelation a = dyr1_relation(s), b = dyr_relation(s, rd);
  rep.details["epsilons"] = {to_string(s.epsR), to_string(s.epsL)};
  rep.details["explicit_form_terms"] = a.term_count();
  rep.details["bivector_form_terms"] = b.term_count();
  rep.details["digest"] = relation_digest(a, s);
  if (!(a == b)) rep.fail(first_difference(a, b, s));
  // normalization must not depend on how the chains are bracketed
  Rng g(0x5eed);
  bool stable = true;
  for (int t = 0; t < 3 && stable; ++t) stable = dyr1_relation(s, &g) == a && dyr_relation(s, rd, &g) == b;
  rep.details["shuffle_stable"] = stable;
  if (!stable) rep.fail({{"shuffle", "bracketing changed the normal form"}});
  rep.elapsed_ms = sw.ms();
  return rep;
}

FormalRelation expand_dtral(const DynSystem& s, DtralMode mode, const BivectorReading& rd) {
  if (!s.m) throw InputError("dtral needs a flavored system (m >= 1)");
  auto [l, r] = bivector_chains(s, mode, rd);
  return normalize(evaluate_chain(l), evaluate_chain(r), kFlavorSites);
}

CheckReport compare_dtral_modes(const DynSystem& s, const BivectorReading& rd) {
  Stopwatch sw;
  CheckReport rep;
  rep.tag = "dtral";
  FormalRelation n = expand_dtral(s, DtralMode::narrow, rd), b = expand_dtral(s, DtralMode::broad, rd);
  std::size_t differing = 0;
  std::set<std::vector<int>> keys;
  for (const auto& [k, v] : n.entries) keys.insert(k);
  for (const auto& [k, v] : b.entries) keys.insert(k);
  for (const auto& k : keys) {
    auto i = n.entries.find(k), j = b.entries.find(k);
    if (i == n.entries.end() || j == b.entries.end() || i->second != j->second) ++differing;
  }
  rep.details["epsilons"] = {to_string(s.epsR), to_string(s.epsL), to_string(s.epsF)};
  rep.details["narrow"] = {{"entries", n.entries.size()}, {"terms", n.term_count()}, {"digest", relation_digest(n, s)}};
  rep.details["broad"] = {{"entries", b.entries.size()}, {"terms", b.term_count()}, {"digest", relation_digest(b, s)}};
  rep.details["modes_differ"] = !(n == b);
  rep.details["differing_entries"] = differing;
  rep.details["first_difference"] = first_difference(n, b, s);
  rep.elapsed_ms = sw.ms();
  return rep;
}

}  // namespace ybx
