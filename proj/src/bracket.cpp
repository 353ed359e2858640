// Copyright 2026 The ybx Authors
// SPDX-License-Identifier: Apache-2.0

#include "ybx/bracket.hpp"

namespace ybx {

std::string kind_name(BracketKind k) {
  switch (k) {
    case BracketKind::constant: return "constant";
    case BracketKind::linear: return "linear";
    case BracketKind::quadratic: return "quadratic";
  }
  return "?";
}

BracketSpec BracketSpec::constant(int m) {
  BracketSpec s;
  s.m = m;
  s.kind = BracketKind::constant;
  s.cc.assign(std::size_t(m * m), 0);
  return s;
}
BracketSpec BracketSpec::linear(int m) {
  BracketSpec s;
  s.m = m;
  s.kind = BracketKind::linear;
  s.bb.assign(std::size_t(m * m * m), 0);
  return s;
}
BracketSpec BracketSpec::quadratic(int m) {
  BracketSpec s;
  s.m = m;
  s.kind = BracketKind::quadratic;
  s.rr.assign(std::size_t(m * m * m * m), 0);
  s.aa.assign(std::size_t(m * m * m * m), 0);
  return s;
}

json spec_index_json(const std::vector<int>& idx) {
  json j = json::array();
  for (int i : idx) j.push_back(i + 1);
  return j;
}

void validate(const BracketSpec& s) {
  const int m = s.m;
  if (m < 1) throw InputError("m must be positive");
  if (s.kind == BracketKind::constant) {
    if (s.cc.size() != std::size_t(m * m)) throw InputError("c has wrong size");
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        if (s.c(a, b) != -s.c(b, a))
          throw InputError("c is not skew-symmetric at (" + std::to_string(a + 1) + "," + std::to_string(b + 1) +
                           ") [dconst]");
  } else if (s.kind == BracketKind::linear) {
    if (s.bb.size() != std::size_t(m * m * m)) throw InputError("b has wrong size");
  } else {
    if (s.rr.size() != std::size_t(m * m * m * m) || s.aa.size() != s.rr.size()) throw InputError("r/a have wrong size");
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int g = 0; g < m; ++g)
          for (int e = 0; e < m; ++e)
            if (s.r(a, b, g, e) != -s.r(b, a, e, g))
              throw InputError("r violates r^{ge}_{ab} = -r^{eg}_{ba} at " +
                               spec_index_json({a, b, g, e}).dump() + " [r1]");
  }
}

Sweedler bracket_generators(const BracketSpec& s, int al, int be) {
  Sweedler out(2);
  const int m = s.m;
  switch (s.kind) {
    case BracketKind::constant:
      out.add_term({{}, {}}, s.c(al, be));
      break;
    case BracketKind::linear:
      for (int g = 0; g < m; ++g) {
        out.add_term({{g}, {}}, s.b(al, be, g));
        out.add_term({{}, {g}}, -s.b(be, al, g));
      }
      break;
    case BracketKind::quadratic:
      for (int u = 0; u < m; ++u)
        for (int v = 0; v < m; ++v) {
          out.add_term({{u}, {v}}, s.r(al, be, u, v));
          out.add_term({{u, v}, {}}, s.a(al, be, v, u));
          out.add_term({{}, {v, u}}, -s.a(be, al, u, v));
        }
      break;
  }
  return out;
}

namespace {

NcWord slice(const NcWord& w, std::size_t from, std::size_t to) {
  return NcWord(w.begin() + std::ptrdiff_t(from), w.begin() + std::ptrdiff_t(to));
}
NcWord cat(NcWord a, const NcWord& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

// Right argument by the outer Leibniz rule, left argument by the inner one:
// for words u = u'x_a u'', w = w'x_b w'' and <<x_a,x_b>> = s1⊗s2 this gives
// (w' s1 u'') ⊗ (u' s2 w'').
Sweedler bracket(const BracketSpec& s, const NcPoly& p, const NcPoly& q, int cap) {
  check_degree(p, cap);
  check_degree(q, cap);
  Sweedler out(2);
  for (const auto& [u, cu] : p.terms())
    for (const auto& [w, cw] : q.terms())
      for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j) {
          Sweedler g = bracket_generators(s, u[i], w[j]);
          for (const auto& [k, c] : g.terms()) {
            NcWord t1 = cat(slice(w, 0, j), k[0]);
            NcWord t2 = cat(k[1], slice(w, j + 1, w.size()));
            out.add_term({cat(t1, slice(u, i + 1, u.size())), cat(slice(u, 0, i), t2)}, cu * cw * c);
          }
        }
  return out;
}

NcPoly loday_bracket(const BracketSpec& s, const NcPoly& p, const NcPoly& q, int cap) {
  return mu(bracket(s, p, q, cap));
}

// Term k of the cyclic sum uses the arguments rotated k times and is mapped
// back by σ^k; <<u, v⊗w>>_l = <<u,v>>⊗w.
Sweedler double_jacobi_sum(const BracketSpec& s, const NcPoly& a, const NcPoly& b, const NcPoly& c, int cap) {
  const NcPoly* args[3][3] = {{&a, &b, &c}, {&b, &c, &a}, {&c, &a, &b}};
  Sweedler total(3);
  for (int k = 0; k < 3; ++k) {
    const NcPoly &x = *args[k][0], &y = *args[k][1], &z = *args[k][2];
    Sweedler inner = bracket(s, y, z, cap);
    Sweedler term(3);
    for (const auto& [kk, cf] : inner.terms()) {
      Sweedler outer = bracket(s, x, word(kk[0]), cap);
      for (const auto& [t, c2] : outer.terms()) term.add_term({t[0], t[1], kk[1]}, cf * c2);
    }
    for (int r = 0; r < k; ++r) term = cycle3(term);
    total += term;
  }
  return total;
}

CheckReport check_skew(const BracketSpec& s, int sample_degree, std::uint64_t seed, int samples) {
  Stopwatch sw;
  CheckReport rep;
  rep.tag = "skew";
  auto test = [&](const NcPoly& p, const NcPoly& q) {
    Sweedler d = bracket(s, p, q) + swap_legs(bracket(s, q, p));
    if (!d.zero()) rep.fail({{"p", to_string(p)}, {"q", to_string(q)}, {"difference", to_string(d)}});
  };
  for (int a = 0; a < s.m && rep.pass; ++a)
    for (int b = 0; b < s.m && rep.pass; ++b) test(gen(a), gen(b));
  Rng g(seed);
  for (int k = 0; k < samples && rep.pass; ++k)
    test(random_poly(g, s.m, sample_degree, 3), random_poly(g, s.m, sample_degree, 3));
  rep.elapsed_ms = sw.ms();
  return rep;
}

CheckReport check_double_jacobi(const BracketSpec& s) {
  Stopwatch sw;
  CheckReport rep;
  rep.tag = "db";
  for (int a = 0; a < s.m && rep.pass; ++a)
    for (int b = 0; b < s.m && rep.pass; ++b)
      for (int c = 0; c < s.m && rep.pass; ++c) {
        Sweedler sum = double_jacobi_sum(s, gen(a), gen(b), gen(c));
        if (!sum.zero()) rep.fail({{"triple", spec_index_json({a, b, c})}, {"cyclic_sum", to_string(sum)}});
      }
  rep.elapsed_ms = sw.ms();
  return rep;
}

CheckReport check_linear_assoc(const BracketSpec& s) {
  Stopwatch sw;
  CheckReport rep;
  rep.tag = "r0";
  if (s.kind != BracketKind::linear) throw InputError("r0 applies to linear brackets only");
  const int m = s.m;
  for (int al = 0; al < m && rep.pass; ++al)
    for (int be = 0; be < m && rep.pass; ++be)
      for (int ga = 0; ga < m && rep.pass; ++ga)
        for (int si = 0; si < m && rep.pass; ++si) {
          Rational lhs = 0, rhs = 0;
          for (int mu = 0; mu < m; ++mu) {
            lhs += s.b(al, be, mu) * s.b(mu, ga, si);
            rhs += s.b(al, mu, si) * s.b(be, ga, mu);
          }
          if (lhs != rhs)
            rep.fail({{"indices", spec_index_json({al, be, ga, si})}, {"lhs", to_string(lhs)}, {"rhs", to_string(rhs)}});
        }
  // the linear bracket is double Poisson iff (r0) holds
  CheckReport db = check_double_jacobi(s);
  rep.details["db_agrees"] = db.pass == rep.pass;
  if (db.pass != rep.pass && rep.pass) rep.fail({{"reason", "r0 passes but db fails"}, {"db", db.counterexample}});
  rep.elapsed_ms = sw.ms();
  return rep;
}

CheckReport check_quadratic_relations(const BracketSpec& s) {
  Stopwatch sw;
  CheckReport rep;
  rep.tag = "r1+r2";
  if (s.kind != BracketKind::quadratic) throw InputError("r2 applies to quadratic brackets only");
  const int m = s.m;
  for (int a = 0; a < m && rep.pass; ++a)
    for (int b = 0; b < m && rep.pass; ++b)
      for (int g = 0; g < m && rep.pass; ++g)
        for (int e = 0; e < m && rep.pass; ++e)
          if (s.r(a, b, g, e) != -s.r(b, a, e, g)) rep.fail({{"identity", "r1"}, {"indices", spec_index_json({a, b, g, e})}});
  std::vector<int> t(6, 0);
  auto R = [&](int a, int b, int c, int d) -> const Rational& { return s.r(a, b, c, d); };
  auto A = [&](int a, int b, int c, int d) -> const Rational& { return s.a(a, b, c, d); };
  for (int al = 0; al < m && rep.pass; ++al)
    for (int be = 0; be < m && rep.pass; ++be)
      for (int ta = 0; ta < m && rep.pass; ++ta)
        for (int la = 0; la < m && rep.pass; ++la)
          for (int mu = 0; mu < m && rep.pass; ++mu)
            for (int nu = 0; nu < m && rep.pass; ++nu) {
              Rational v[4] = {0, 0, 0, 0};
              for (int si = 0; si < m; ++si) {
                v[0] += R(al, be, la, si) * R(si, ta, mu, nu) + R(be, ta, mu, si) * R(si, al, nu, la) +
                        R(ta, al, nu, si) * R(si, be, la, mu);
                v[1] += A(al, be, si, la) * A(ta, si, mu, nu) - A(ta, al, mu, si) * A(si, be, nu, la);
                v[2] += A(al, be, si, la) * A(si, ta, mu, nu) - A(al, be, mu, si) * R(ta, si, la, nu) -
                        A(al, si, mu, nu) * R(be, ta, si, la);
                v[3] += A(al, be, la, si) * A(ta, si, mu, nu) - A(al, be, si, nu) * R(si, ta, la, mu) -
                        A(si, be, mu, nu) * R(ta, al, si, la);
              }
              for (int k = 0; k < 4 && rep.pass; ++k)
                if (!is_zero(v[k]))
                  rep.fail({{"identity", "r2." + std::to_string(k + 1)},
                            {"indices", spec_index_json({al, be, ta, la, mu, nu})},
                            {"value", to_string(v[k])}});
            }
  rep.elapsed_ms = sw.ms();
  return rep;
}

BracketSpec random_constant(int m, Rng& g, int coef) {
  BracketSpec s = BracketSpec::constant(m);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      s.c(a, b) = rand_int(g, -coef, coef);
      s.c(b, a) = -s.c(a, b);
    }
  return s;
}

BracketSpec matrix_algebra_constants(int n) {
  BracketSpec s = BracketSpec::linear(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) s.b(n * i + j, n * j + l, n * i + l) = 1;
  return s;
}

BracketSpec random_quadratic(int m, Rng& g, int coef, bool symmetric_a) {
  BracketSpec s = BracketSpec::quadratic(m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int ga = 0; ga < m; ++ga)
        for (int e = 0; e < m; ++e) {
          std::pair<int, int> p{a, ga}, q{b, e};
          if (p < q) {
            s.r(a, b, ga, e) = rand_int(g, -coef, coef);
            s.r(b, a, e, ga) = -s.r(a, b, ga, e);
          }
          if (!symmetric_a) {
            s.a(a, b, ga, e) = rand_int(g, -coef, coef);
          } else if (p <= q) {
            s.a(a, b, ga, e) = rand_int(g, -coef, coef);
            s.a(b, a, e, ga) = s.a(a, b, ga, e);
          }
        }
  return s;
}

bool a_symmetric(const BracketSpec& s) {
  const int m = s.m;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int g = 0; g < m; ++g)
        for (int e = 0; e < m; ++e)
          if (s.a(a, b, g, e) != s.a(b, a, e, g)) return false;
  return true;
}

bool is_trivial(const BracketSpec& s) {
  for (const auto* v : {&s.cc, &s.bb, &s.rr, &s.aa})
    for (const auto& q : *v)
      if (!is_zero(q)) return false;
  return true;
}

}  // namespace ybx
