// Copyright 2026 The ybx Authors
// SPDX-License-Identifier: Apache-2.0

#include "ybx/quantum.hpp"

#include <algorithm>

namespace ybx {

namespace {

using Names = std::map<std::string, std::string>;
using JPoly = HbarJet<KPoly>;
using JTensor = LabeledTensor<JPoly>;

KTensor to_k(const QTensor& t) {
  return map_entries<KPoly>(t, [](const Rational& q) { return KPoly(q); });
}

template <class S>
LabeledTensor<S> mul_rule(const LabeledTensor<S>& a, const LabeledTensor<S>& b, ProductRule r) {
  return r == ProductRule::flavor_rule ? mul(a, b) : mul_plain(a, b);
}

template <class S>
LabeledTensor<S> pt(const LabeledTensor<S>& t, const std::set<std::string>& s) {
  return partial_transpose(t, s);
}

KTensor k_operator(int N, int m, const std::string& c, const std::string& f) {
  KTensor K(std::vector<SiteSpec>{color(c, N), as_vector(flavor(f, m))});
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int a = 0; a < m; ++a) K.at({i, j, a}) = KPoly::monomial({k_symbol(N, m, i, j, a)});
  return K;
}

KTensor k_bivector(int N, int m, const std::string& c, const std::string& cp, const std::string& f) {
  KTensor K(std::vector<SiteSpec>{as_vector(color(c, N)), as_vector(color(cp, N)), as_vector(flavor(f, m))});
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int a = 0; a < m; ++a) K.at({i, j, a}) = KPoly::monomial({k_symbol(N, m, i, j, a)});
  return K;
}

std::vector<SiteSpec> bivector_sites(int N, int m) {
  return {color("c1", N), color("c1p", N), flavor("fI", m), color("c2", N), color("c2p", N), flavor("fII", m)};
}

std::vector<SiteSpec> flavor_sites(int m) { return {flavor("f1", m), flavor("f2", m)}; }
std::vector<SiteSpec> color_sites(int N) { return {color("c1", N), color("c2", N)}; }

QTensor on4(const QTensor& t, const std::string& c1, const std::string& f1, const std::string& c2,
            const std::string& f2) {
  return rename_sites(t, Names{{"c1", c1}, {"f1", f1}, {"c2", c2}, {"f2", f2}});
}

// (first differing entry) for two tensors over the same sites
json first_difference(const QTensor& a, const QTensor& b) { return tensor_difference(a, align_to(b, a)); }

// rank over Q of the rows
std::size_t rank_of(std::vector<std::vector<Rational>> M) {
  std::size_t rank = 0;
  std::size_t cols = M.empty() ? 0 : M[0].size();
  for (std::size_t c = 0; c < cols && rank < M.size(); ++c) {
    std::size_t p = rank;
    while (p < M.size() && is_zero(M[p][c])) ++p;
    if (p == M.size()) continue;
    std::swap(M[p], M[rank]);
    for (std::size_t r = rank + 1; r < M.size(); ++r) {
      if (is_zero(M[r][c])) continue;
      Rational f = M[r][c] / M[rank][c];
      for (std::size_t k = c; k < cols; ++k) M[r][k] -= f * M[rank][k];
    }
    ++rank;
  }
  return rank;
}

QTensor triple(const QTensor& t, const Names& m) { return rename_sites(t, m); }

json relation_json(const QTensor& lhs, const QTensor& rhs, const std::string& name) {
  json d = first_difference(lhs, rhs);
  if (!d.is_null()) d["relation"] = name;
  return d;
}

}  // namespace

std::string rule_name(ProductRule r) { return r == ProductRule::flavor_rule ? "flavor-rule" : "ordinary"; }

std::vector<SiteSpec> abcd_sites(int N, int m) {
  return {color("c1", N), flavor("f1", m), color("c2", N), flavor("f2", m)};
}

ABCDSystem identity_system(int N, int m) {
  ABCDSystem s;
  s.N = N;
  s.m = m;
  s.A = s.B = s.C = s.D = identity<Rational>(abcd_sites(N, m));
  return s;
}

ABCDSystem random_system(int N, int m, Rng& g) {
  ABCDSystem s = identity_system(N, m);
  for (QTensor* t : {&s.A, &s.B, &s.C, &s.D}) {
    for (std::size_t k = 0; k < t->size(); ++k) (*t)[k] = (*t)[k] * 5 + rand_int(g, -2, 2);
  }
  return s;
}

QTensor swap_spaces(const QTensor& t) {
  QTensor r = rename_sites(t, Names{{"c1", "c2"}, {"c2", "c1"}, {"f1", "f2"}, {"f2", "f1"}});
  return align_to(r, t);
}

std::string k_symbol_name(int N, int m, int id) {
  int a = id % m, ij = id / m;
  return "K^{" + std::to_string(ij / N + 1) + std::to_string(ij % N + 1) + "}_" + std::to_string(a + 1);
}

// ---------------------------------------------------------------------------
// bivector form
// ---------------------------------------------------------------------------

QTensor fm_left(const ABCDSystem& s) {
  QTensor Af = on4(s.A, "c1", "fI", "c2", "fII");
  QTensor Bf = pt(on4(s.B, "c1p", "fI", "c2", "fII"), {"c1p", "fI"});
  return mul(Af, Bf);
}

QTensor fm_right(const ABCDSystem& s) {
  QTensor Cf = pt(on4(s.C, "c1", "fI", "c2p", "fII"), {"c2p", "fII"});
  QTensor Df = pt(on4(s.D, "c1p", "fI", "c2p", "fII"), {"c1p", "fI", "c2p", "fII"});
  return mul(Df, Cf);
}

QTensor build_R(const ABCDSystem& s) {
  QTensor right = embed(fm_right(s), bivector_sites(s.N, s.m));
  QTensor left = embed(fm_left(s), bivector_sites(s.N, s.m));
  QTensor inv;
  try {
    inv = inverse(right);
  } catch (const SingularError&) {
    throw InputError("build_R: C^{T2'} or D^{T1'T2'} is singular");
  }
  return align_to(mul(inv, left), left);
}

// Index form of A B^{T1'} 𝒦𝒦 - D^{T1'T2'} C^{T2'} 𝒦𝒦 at (i,q,μ,k,s,ν).
KPoly component_relation(const ABCDSystem& sys, int i, int q, int mu, int k, int s, int nu) {
  const int N = sys.N, m = sys.m;
  // M.at order: c1.r c1.c f1.r f1.c c2.r c2.c f2.r f2.c
  auto M = [](const QTensor& t, int a, int b, int al, int be, int c, int d, int ga, int de) -> const Rational& {
    return t.at({a, b, al, be, c, d, ga, de});
  };
  auto kk = [&](int a, int b, int al, int c, int d, int de) {
    return KPoly::monomial({k_symbol(N, m, a, b, al), k_symbol(N, m, c, d, de)});
  };
  KPoly out;
  for (int j = 0; j < N; ++j)
    for (int l = 0; l < N; ++l)
      for (int n = 0; n < N; ++n)
        for (int p = 0; p < N; ++p)
          for (int al = 0; al < m; ++al)
            for (int be = 0; be < m; ++be)
              for (int ga = 0; ga < m; ++ga)
                for (int de = 0; de < m; ++de) {
                  Rational c = M(sys.A, i, j, mu, be, k, l, nu, ga) * M(sys.B, n, q, al, be, l, p, ga, de);
                  if (!is_zero(c)) out += kk(j, n, al, p, s, de) * c;
                }
  for (int j = 0; j < N; ++j)
    for (int n = 0; n < N; ++n)
      for (int u = 0; u < N; ++u)
        for (int r = 0; r < N; ++r)
          for (int al = 0; al < m; ++al)
            for (int be = 0; be < m; ++be)
              for (int ga = 0; ga < m; ++ga)
                for (int de = 0; de < m; ++de) {
                  Rational c = M(sys.D, n, q, al, mu, u, s, de, nu) * M(sys.C, i, j, al, be, r, u, ga, de);
                  if (!is_zero(c)) out -= kk(k, r, ga, j, n, be) * c;
                }
  return out;
}

KTensor fm_relation(const ABCDSystem& s) {
  KTensor R = to_k(build_R(s));
  KTensor KI = k_bivector(s.N, s.m, "c1", "c1p", "fI"), KII = k_bivector(s.N, s.m, "c2", "c2p", "fII");
  KTensor lhs = mul(mul(R, KI), KII), rhs = mul(KII, KI);
  return lhs - align_to(rhs, lhs);
}

KTensor fm_relation_pre(const ABCDSystem& s) {
  KTensor KI = k_bivector(s.N, s.m, "c1", "c1p", "fI"), KII = k_bivector(s.N, s.m, "c2", "c2p", "fII");
  KTensor lhs = mul(mul(to_k(fm_left(s)), KI), KII);
  KTensor rhs = mul(to_k(fm_right(s)), mul(KII, KI));
  return lhs - align_to(rhs, lhs);
}

namespace {

KTensor etoile(const KTensor& A, const KTensor& B, const KTensor& C, const KTensor& D, const KTensor& Ka,
               const KTensor& Kb, const std::string& fa, const std::string& fb, ProductRule r) {
  // (A (Ka^t B)^{ta} Kb)^{tb} - (Kb^t (C Ka)^{ta} D)^{ta}
  KTensor lhs = pt(mul_rule(mul_rule(A, pt(mul_rule(pt(Ka, {fa}), B, r), {fa}), r), Kb, r), {fb});
  KTensor rhs = pt(mul_rule(mul_rule(pt(Kb, {fb}), pt(mul_rule(C, Ka, r), {fa}), r), D, r), {fa});
  return lhs - align_to(rhs, lhs);
}

}  // namespace

KTensor etoile1(const ABCDSystem& s, ProductRule r) {
  return etoile(to_k(s.A), to_k(s.B), to_k(s.C), to_k(s.D), k_operator(s.N, s.m, "c1", "f1"),
                k_operator(s.N, s.m, "c2", "f2"), "f1", "f2", r);
}

KTensor etoile2(const ABCDSystem& s, ProductRule r) {
  return etoile(to_k(swap_spaces(s.A)), to_k(swap_spaces(s.B)), to_k(swap_spaces(s.C)), to_k(swap_spaces(s.D)),
                k_operator(s.N, s.m, "c2", "f2"), k_operator(s.N, s.m, "c1", "f1"), "f2", "f1", r);
}

SpanRanks compare_spans(const KTensor& a, const KTensor& b) {
  std::map<std::vector<int>, std::size_t> col;
  for (const KTensor* t : {&a, &b})
    for (const auto& p : t->data())
      for (const auto& kv : p.terms()) col.emplace(kv.first, 0);
  std::size_t n = 0;
  for (auto& kv : col) kv.second = n++;
  auto rows = [&](const KTensor& t) {
    std::vector<std::vector<Rational>> M;
    for (const auto& p : t.data()) {
      if (p.zero()) continue;
      std::vector<Rational> row(n);
      for (const auto& [w, c] : p.terms()) row[col[w]] = c;
      M.push_back(std::move(row));
    }
    return M;
  };
  auto ra = rows(a), rb = rows(b);
  SpanRanks s;
  s.r1 = rank_of(ra);
  s.r2 = rank_of(rb);
  ra.insert(ra.end(), rb.begin(), rb.end());
  s.joint = rank_of(ra);
  return s;
}

CheckReport check_relation_equivalence(const ABCDSystem& sys, ProductRule rule) {
  Stopwatch sw;
  CheckReport rep;
  rep.tag = "etoile~FM";
  KTensor e1 = etoile1(sys, rule), e2 = etoile2(sys, rule), fm = fm_relation(sys);
  SpanRanks s1 = compare_spans(e1, fm), s2 = compare_spans(e2, fm), s12 = compare_spans(e1, e2);
  auto ranks = [](const SpanRanks& s) { return json{{"lhs", s.r1}, {"rhs", s.r2}, {"joint", s.joint}}; };
  rep.details["rule"] = rule_name(rule);
  rep.details["etoile1_vs_fm"] = ranks(s1);
  rep.details["etoile2_vs_fm"] = ranks(s2);
  rep.details["etoile2_equivalent"] = s12.same();
  // (etoile2) is (etoile1) with the labels 1 and 2 exchanged
  KTensor e2r = rename_sites(e2, Names{{"c1", "c2"}, {"c2", "c1"}, {"f1", "f2"}, {"f2", "f1"}});
  rep.details["etoile2_is_relabeling"] = equal(e1, align_to(e2r, e1));
  // entrywise oracle: index formula against the matrix form before inversion
  KTensor pre = fm_relation_pre(sys);
  KTensor pre_c = align_to(pre, KTensor(std::vector<SiteSpec>{
                                    as_vector(color("c1", sys.N)), as_vector(color("c1p", sys.N)),
                                    as_vector(flavor("fI", sys.m)), as_vector(color("c2", sys.N)),
                                    as_vector(color("c2p", sys.N)), as_vector(flavor("fII", sys.m))}));
  bool comp_ok = true;
  for (std::size_t k = 0; k < pre_c.size() && comp_ok; ++k) {
    auto x = pre_c.unravel(k);
    if (component_relation(sys, x[0], x[1], x[2], x[3], x[4], x[5]) != pre_c[k]) {
      comp_ok = false;
      rep.fail({{"relation", "index formula vs matrix form"}, {"entry", index_string(pre_c, k)}});
    }
  }
  rep.details["index_formula"] = comp_ok;
  // term-by-term: etoile1 at (c1: i,q; f1: μ; c2: k,s; f2: ν) against the matrix form
  bool termwise = true;
  {
    const int pi = e1.axis_pos("c1.r"), pq = e1.axis_pos("c1.c"), pm = e1.axis_pos("f1.r"), pk = e1.axis_pos("c2.r"),
              ps = e1.axis_pos("c2.c"), pn = e1.axis_pos("f2.c");
    if (pi < 0 || pq < 0 || pm < 0 || pk < 0 || ps < 0 || pn < 0) {
      termwise = false;
    } else {
      for (std::size_t k = 0; k < e1.size() && termwise; ++k) {
        auto x = e1.unravel(k);
        if (e1[k] != pre_c.at({x[pi], x[pq], x[pm], x[pk], x[ps], x[pn]})) {
          termwise = false;
          rep.fail({{"relation", "etoile1 vs matrix form, term by term"}, {"entry", index_string(e1, k)}});
        }
      }
    }
  }
  rep.details["termwise"] = termwise;
  if (!s1.same())
    rep.fail({{"relation", "etoile1 vs bivector form"}, {"ranks", ranks(s1)}});
  rep.elapsed_ms = sw.ms();
  return rep;
}

// ---------------------------------------------------------------------------
// QYBE and unitarity
// ---------------------------------------------------------------------------

CheckReport check_qybe(const QTensor& R) {
  Stopwatch sw;
  CheckReport rep;
  rep.tag = "QYBE";
  QTensor R12 = R;
  QTensor R13 = triple(R, {{"c2", "c3"}, {"c2p", "c3p"}, {"fII", "fIII"}});
  QTensor R23 = triple(R, {{"c1", "c2"}, {"c1p", "c2p"}, {"fI", "fII"}, {"c2", "c3"}, {"c2p", "c3p"}, {"fII", "fIII"}});
  QTensor lhs = mul(mul(R12, R13), R23), rhs = mul(mul(R23, R13), R12);
  json d = relation_json(lhs, rhs, "R12 R13 R23 = R23 R13 R12");
  if (!d.is_null()) rep.fail(d);
  rep.elapsed_ms = sw.ms();
  return rep;
}

CheckReport check_unitarity(const ABCDSystem& s) {
  Stopwatch sw;
  CheckReport rep;
  rep.tag = "unitarity";
  QTensor R = build_R(s);
  QTensor R21 = rename_sites(R, Names{{"c1", "c2"}, {"c2", "c1"}, {"c1p", "c2p"}, {"c2p", "c1p"}, {"fI", "fII"}, {"fII", "fI"}});
  QTensor prod = mul(R, R21);
  json d = relation_json(prod, identity<Rational>(bivector_sites(s.N, s.m)), "R_{I,II} R_{II,I} = 1");
  // sufficient conditions, reported separately
  rep.details["C12=B21"] = equal(s.C, swap_spaces(s.B));
  const std::set<std::string> all{"c1", "f1", "c2", "f2"};
  bool cond2 = false;
  try {
    QTensor lhs = mul(inverse(pt(s.D, all)), s.A);
    QTensor rhs = mul(inverse(swap_spaces(s.A)), pt(swap_spaces(s.D), all));
    cond2 = equal(lhs, align_to(rhs, lhs));
  } catch (const SingularError&) {
  }
  rep.details["(D^T)^-1 A = A21^-1 D21^T"] = cond2;
  if (!d.is_null()) rep.fail(d);
  rep.elapsed_ms = sw.ms();
  return rep;
}

// ---------------------------------------------------------------------------
// decoupled systems
// ---------------------------------------------------------------------------

QTensor color_flip(int N) {
  QTensor P(color_sites(N));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) P.at({i, j, j, i}) = 1;
  return P;
}

QTensor flavor_flip(int m) {
  QTensor P(flavor_sites(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) P.at({i, j, j, i}) = 1;
  return P;
}

namespace {

QTensor swap_flavor(const QTensor& t) { return align_to(rename_sites(t, Names{{"f1", "f2"}, {"f2", "f1"}}), t); }

QTensor kron(const QTensor& flav, const QTensor& col, int N, int m) { return embed(mul(flav, col), abcd_sites(N, m)); }

void rebuild(ABCDSystem& s) {
  const auto& p = *s.parts;
  s.A = kron(p.flavorA, p.colorA, s.N, s.m);
  s.B = kron(p.flavorB, p.colorB, s.N, s.m);
  s.C = kron(p.flavorC, p.colorC, s.N, s.m);
  s.D = kron(p.flavorD, p.colorD, s.N, s.m);
}

}  // namespace

ABCDSystem build_decoupled(const QTensor& cA, const QTensor& cB, const QTensor& cC, const QTensor& cD,
                           const QTensor& F, const QTensor& Rt, const std::optional<QTensor>& G) {
  ABCDSystem s;
  s.N = cA.axes()[0].dim;
  s.m = F.axes()[0].dim;
  DecoupledParts p;
  p.colorA = cA, p.colorB = cB, p.colorC = cC, p.colorD = cD;
  p.F = F, p.Rtilde = Rt;
  p.G = G ? *G : identity<Rational>(flavor_sites(s.m));
  QTensor Fi;
  try {
    Fi = inverse(F);
  } catch (const SingularError&) {
    throw InputError("build_decoupled: F is singular");
  }
  QTensor R = mul(mul(Fi, Rt), swap_flavor(F));
  p.flavorC = pt(F, {"f2"});
  p.flavorB = swap_flavor(p.flavorC);
  p.flavorA = p.G;
  p.flavorD = align_to(pt(mul(p.G, inverse(R)), {"f1", "f2"}), p.G);
  s.parts = p;
  rebuild(s);
  return s;
}

ABCDSystem apply_gauge(const ABCDSystem& sys, const QTensor& G) {
  ABCDSystem s = sys;
  QTensor Gt = pt(G, {"f1", "f2"});
  if (s.parts) {
    auto& p = *s.parts;
    p.flavorA = align_to(mul(G, p.flavorA), G);
    p.flavorD = align_to(mul(p.flavorD, Gt), G);
    p.G = align_to(mul(G, p.G), G);
    rebuild(s);
  } else {
    s.A = align_to(mul(G, s.A), s.A);
    s.D = align_to(mul(s.D, Gt), s.D);
  }
  return s;
}

CheckReport check_decoupled_color(const ABCDSystem& s) {
  Stopwatch sw;
  CheckReport rep;
  rep.tag = "color";
  if (!s.parts) throw InputError("check decoupled: system has no color/flavor split");
  const auto& p = *s.parts;
  auto t13 = [](const QTensor& t) { return rename_sites(t, Names{{"c2", "c3"}}); };
  auto t23 = [](const QTensor& t) { return rename_sites(t, Names{{"c1", "c2"}, {"c2", "c3"}}); };
  auto rel = [&](const QTensor& X, const QTensor& Y, const std::string& name) {
    QTensor lhs = mul(mul(X, t13(Y)), t23(Y)), rhs = mul(mul(t23(Y), t13(Y)), X);
    json d = relation_json(lhs, rhs, name);
    rep.details[name] = d.is_null();
    if (!d.is_null()) rep.fail(d);
  };
  rel(p.colorA, p.colorA, "A12A13A23=A23A13A12");
  rel(p.colorD, p.colorD, "D12D13D23=D23D13D12");
  rel(p.colorA, p.colorC, "A12C13C23=C23C13A12");
  rel(p.colorD, p.colorB, "D12B13B23=B23B13D12");
  rep.elapsed_ms = sw.ms();
  return rep;
}

CheckReport check_decoupled_flavor(const ABCDSystem& s) {
  Stopwatch sw;
  CheckReport rep;
  rep.tag = "flavor";
  if (!s.parts) throw InputError("check decoupled: system has no color/flavor split");
  const auto& p = *s.parts;
  QTensor R = mul(inverse(pt(p.flavorD, {"f1", "f2"})), p.flavorA);
  QTensor Ct = pt(p.flavorC, {"f2"});
  QTensor Rt = align_to(mul(mul(inverse(Ct), R), pt(swap_flavor(p.flavorC), {"f1"})), p.F);
  rep.details["Rtilde_matches_input"] = equal(Rt, p.Rtilde);
  auto t13 = [](const QTensor& t) { return rename_sites(t, Names{{"f2", "f3"}}); };
  auto t23 = [](const QTensor& t) { return rename_sites(t, Names{{"f1", "f2"}, {"f2", "f3"}}); };
  json d = relation_json(mul(mul(Rt, t13(Rt)), t23(Rt)), mul(mul(t23(Rt), t13(Rt)), Rt), "Rt12 Rt13 Rt23 = Rt23 Rt13 Rt12");
  rep.details["ybe"] = d.is_null();
  if (!d.is_null()) rep.fail(d);
  json u = relation_json(mul(Rt, swap_flavor(Rt)), identity<Rational>(flavor_sites(s.m)), "Rt12 Rt21 = 1");
  rep.details["unitary"] = u.is_null();
  if (!u.is_null()) rep.fail(u);
  rep.elapsed_ms = sw.ms();
  return rep;
}

// ---------------------------------------------------------------------------
// quasi-classical limit
// ---------------------------------------------------------------------------

namespace {

JTensor jet_x(int N, int m, int k) {
  // K_k = X_k + ħ Y_k on f<k> (vector), c<k>;  K^{ab}_α = x^a_{b,α}
  const std::string f = "f" + std::to_string(k), c = "c" + std::to_string(k);
  const int n = N * N * m;
  JTensor K(std::vector<SiteSpec>{as_vector(flavor(f, m)), color(c, N)});
  for (int al = 0; al < m; ++al)
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) {
        int p = coord_index(N, {b, a, al});
        K.at({al, a, b}) = JPoly(KPoly::monomial({p}), KPoly::monomial({n + p}));
      }
  return K;
}

JTensor jet_of(const PTensor& frak_t, int sign, int N, int m) {
  JTensor one = map_entries<JPoly>(identity<Rational>(std::vector<SiteSpec>{flavor("f1", m), color("c1", N),
                                                                             flavor("f2", m), color("c2", N)}),
                                   [](const Rational& q) { return JPoly(KPoly(q)); });
  JTensor h = map_entries<JPoly>(frak_t, [sign](const RepPoly& p) { return JPoly(KPoly(), KPoly(p.constant() * sign)); });
  return one + align_to(h, one);
}

// residual of the order-ħ relation with the given 𝔯, 𝔞, or null
struct LimitParts {
  bool order0 = true, y = true;
  json residual;  // first nonvanishing entry after substituting the bracket
};

LimitParts expand_limit(const BracketSpec& s, const PTensor& r, const PTensor& a, int N, ProductRule rule) {
  const int m = s.m, n = N * N * m;
  JTensor R = jet_of(r, -1, N, m), A12 = jet_of(a, 1, N, m);
  JTensor A21 = align_to(rename_sites(A12, Names{{"f1", "f2"}, {"f2", "f1"}, {"c1", "c2"}, {"c2", "c1"}}), A12);
  JTensor K1 = jet_x(N, m, 1), K2 = jet_x(N, m, 2);
  JTensor lhs = pt(mul_rule(R, pt(mul_rule(mul_rule(pt(K1, {"f1"}), A21, rule), K2, rule), {"f1"}), rule), {"f2"});
  JTensor rhs = pt(mul_rule(pt(mul_rule(mul_rule(pt(K2, {"f2"}), A12, rule), K1, rule), {"f1"}), pt(R, {"f1", "f2"}), rule),
                   {"f1"});
  JTensor E = lhs - align_to(rhs, lhs);
  LimitParts out;
  for (std::size_t k = 0; k < E.size(); ++k) {
    RepPoly comm0, order1;
    for (const auto& [w, c] : E[k].c0.terms()) {
      int u = w[0], v = w[1];
      comm0.add_term({std::min(u, v), std::max(u, v)}, c);
      // x_u x_v = x_v x_u + ħ{x_u, x_v} when u > v
      if (u > v) order1 += poisson_generators(s, decode_coord(N, u), decode_coord(N, v), N) * c;
    }
    RepPoly ypart;
    for (const auto& [w, c] : E[k].c1.terms()) {
      bool has_y = std::any_of(w.begin(), w.end(), [n](int x) { return x >= n; });
      std::vector<int> key(w);
      std::sort(key.begin(), key.end());
      (has_y ? ypart : order1).add_term(key, c);
    }
    if (!comm0.zero()) out.order0 = false;
    if (!ypart.zero()) out.y = false;
    if (!order1.zero() && out.residual.is_null())
      out.residual = {{"entry", index_string(E, k)}, {"residual", to_string(order1, N)}};
  }
  return out;
}

}  // namespace

ClassicalLimitResult classical_limit(const BracketSpec& s, int N, ProductRule rule) {
  if (s.kind != BracketKind::quadratic) throw InputError("classical-limit needs a quadratic bracket");
  ClassicalLimitResult res;
  PTensor r = frak(flavor_r(s), N), a = frak(flavor_a(s), N);
  PTensor zero(r.axes());
  BracketSpec s_r = s, s_a = s;
  std::fill(s_r.aa.begin(), s_r.aa.end(), Rational(0));
  std::fill(s_a.rr.begin(), s_a.rr.end(), Rational(0));
  LimitParts full = expand_limit(s, r, a, N, rule);
  LimitParts rs = expand_limit(s_r, r, zero, N, rule);
  LimitParts as = expand_limit(s_a, zero, a, N, rule);
  res.order0 = full.order0 && rs.order0 && as.order0;
  res.y_cancels = full.y && rs.y && as.y;
  res.bracket_matches = full.residual.is_null();
  res.counterexample = full.residual;
  res.r_sector = {{"matches", rs.residual.is_null()}, {"residual", rs.residual}};
  res.a_sector = {{"matches", as.residual.is_null()}, {"residual", as.residual}};
  return res;
}

CheckReport check_classical_limit(const BracketSpec& s, int N, ProductRule rule) {
  Stopwatch sw;
  CheckReport rep;
  rep.tag = "classical-limit";
  ClassicalLimitResult r = classical_limit(s, N, rule);
  rep.details["rule"] = rule_name(rule);
  rep.details["order0_cancels"] = r.order0;
  rep.details["y_cancels"] = r.y_cancels;
  rep.details["r_sector"] = r.r_sector;
  rep.details["a_sector"] = r.a_sector;
  if (!r.order0) rep.fail({{"relation", "order hbar^0"}});
  if (!r.y_cancels) rep.fail({{"relation", "Y terms"}});
  if (!r.bracket_matches) {
    json c = r.counterexample;
    c["relation"] = "order hbar vs trace-Poisson bracket";
    rep.fail(c);
  }
  rep.elapsed_ms = sw.ms();
  return rep;
}

}  // namespace ybx
