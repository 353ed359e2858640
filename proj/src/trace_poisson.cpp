// Copyright 2026 The ybx Authors
// SPDX-License-Identifier: Apache-2.0

#include "ybx/trace_poisson.hpp"

namespace ybx {

namespace {

RepPoly mono2(int N, const RepCoord& a, const RepCoord& b, const Rational& c) {
  std::vector<int> k{coord_index(N, a), coord_index(N, b)};
  std::sort(k.begin(), k.end());
  return RepPoly::monomial(k, c);
}

json coord_json(const RepCoord& c) { return json{{"i", c.i + 1}, {"j", c.j + 1}, {"alpha", c.alpha + 1}}; }

}  // namespace

// {x^j_{i,α}, x^{j'}_{i',β}}
RepPoly poisson_generators(const BracketSpec& s, const RepCoord& p, const RepCoord& q, int N) {
  const int i = p.i, j = p.j, al = p.alpha;
  const int ip = q.i, jp = q.j, be = q.alpha;
  RepPoly o;
  switch (s.kind) {
    case BracketKind::constant:
      if (i == jp && ip == j) o.add_term({}, s.c(al, be));
      break;
    case BracketKind::linear:
      for (int g = 0; g < s.m; ++g) {
        if (ip == j) o.add_term({coord_index(N, {i, jp, g})}, s.b(al, be, g));
        if (i == jp) o.add_term({coord_index(N, {ip, j, g})}, -s.b(be, al, g));
      }
      break;
    case BracketKind::quadratic:
      for (int g = 0; g < s.m; ++g)
        for (int e = 0; e < s.m; ++e) {
          const Rational& r = s.r(al, be, g, e);
          if (!is_zero(r)) o += mono2(N, {i, jp, g}, {ip, j, e}, r);
          for (int k = 0; k < N; ++k) {
            if (j == ip && !is_zero(s.a(al, be, g, e))) o += mono2(N, {i, k, g}, {k, jp, e}, s.a(al, be, g, e));
            if (jp == i && !is_zero(s.a(be, al, g, e))) o += mono2(N, {ip, k, g}, {k, j, e}, -s.a(be, al, g, e));
          }
        }
      break;
  }
  return o;
}

RepPoly poisson(const BracketSpec& s, const RepPoly& p, const RepPoly& q, int N) {
  RepPoly o;
  std::map<std::pair<int, int>, RepPoly> cache;
  for (const auto& [k1, c1] : p.terms())
    for (const auto& [k2, c2] : q.terms())
      for (std::size_t a = 0; a < k1.size(); ++a) {
        if (a > 0 && k1[a] == k1[a - 1]) continue;
        int mult_a = int(std::count(k1.begin(), k1.end(), k1[a]));
        for (std::size_t b = 0; b < k2.size(); ++b) {
          if (b > 0 && k2[b] == k2[b - 1]) continue;
          int mult_b = int(std::count(k2.begin(), k2.end(), k2[b]));
          auto key = std::make_pair(k1[a], k2[b]);
          auto it = cache.find(key);
          if (it == cache.end())
            it = cache.emplace(key, poisson_generators(s, decode_coord(N, k1[a]), decode_coord(N, k2[b]), N)).first;
          if (it->second.zero()) continue;
          std::vector<int> rest;
          for (std::size_t t = 0; t < k1.size(); ++t)
            if (t != a) rest.push_back(k1[t]);
          for (std::size_t t = 0; t < k2.size(); ++t)
            if (t != b) rest.push_back(k2[t]);
          std::sort(rest.begin(), rest.end());
          o += it->second * RepPoly::monomial(rest, c1 * c2 * mult_a * mult_b);
        }
      }
  return o;
}

CheckReport check_jacobi(const BracketSpec& s, int N, std::uint64_t seed, int samples) {
  Stopwatch sw;
  CheckReport rep;
  rep.tag = "trace-jacobi";
  rep.details["N"] = N;
  const int n = s.m * N * N;
  std::vector<RepPoly> xs;
  for (int k = 0; k < n; ++k) xs.push_back(RepPoly::monomial({k}));
  // brackets of coordinates are reused across triples
  std::vector<RepPoly> pb(std::size_t(n * n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) pb[a * n + b] = poisson_generators(s, decode_coord(N, a), decode_coord(N, b), N);
  auto jac = [&](const RepPoly& p, const RepPoly& q, const RepPoly& r) {
    return poisson(s, p, poisson(s, q, r, N), N) + poisson(s, q, poisson(s, r, p, N), N) +
           poisson(s, r, poisson(s, p, q, N), N);
  };
  for (int a = 0; a < n && rep.pass; ++a)
    for (int b = a; b < n && rep.pass; ++b)
      for (int c = b; c < n && rep.pass; ++c) {
        RepPoly t = poisson(s, xs[a], pb[b * n + c], N) + poisson(s, xs[b], pb[c * n + a], N) +
                    poisson(s, xs[c], pb[a * n + b], N);
        if (!t.zero())
          rep.fail({{"triple", json::array({coord_json(decode_coord(N, a)), coord_json(decode_coord(N, b)),
                                            coord_json(decode_coord(N, c))})},
                    {"cyclic_sum", to_string(t, N)}});
      }
  // random low-degree polynomials guard the bi-derivation extension
  Rng g(seed);
  auto rnd = [&]() {
    RepPoly p;
    for (int t = 0; t < 2; ++t) {
      std::vector<int> k;
      int d = rand_int(g, 1, 2);
      for (int u = 0; u < d; ++u) k.push_back(rand_int(g, 0, n - 1));
      std::sort(k.begin(), k.end());
      p.add_term(k, rand_int(g, 1, 3));
    }
    return p;
  };
  for (int k = 0; k < samples && rep.pass; ++k) {
    RepPoly p = rnd(), q = rnd(), r = rnd();
    RepPoly t = jac(p, q, r);
    if (!t.zero())
      rep.fail({{"p", to_string(p, N)}, {"q", to_string(q, N)}, {"r", to_string(r, N)}, {"cyclic_sum", to_string(t, N)}});
  }
  rep.elapsed_ms = sw.ms();
  return rep;
}

std::vector<NcWord> all_words(int m, int max_len) {
  std::vector<NcWord> out, layer{{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<NcWord> next;
    for (const auto& w : layer)
      for (int a = 0; a < m; ++a) {
        NcWord v = w;
        v.push_back(a);
        next.push_back(v);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

CheckReport check_trace_morphism(const BracketSpec& s, int N, const std::vector<NcWord>& words) {
  Stopwatch sw;
  CheckReport rep;
  rep.tag = "traceP";
  std::vector<RepPoly> tr;
  for (const auto& w : words) tr.push_back(trace_word(w, N));
  for (std::size_t a = 0; a < words.size() && rep.pass; ++a)
    for (std::size_t b = 0; b < words.size() && rep.pass; ++b) {
      RepPoly lhs = poisson(s, tr[a], tr[b], N);
      RepPoly rhs = trace_poly(cyclic_reduce(loday_bracket(s, word(words[a]), word(words[b]))), N);
      if (lhs != rhs)
        rep.fail({{"a", to_string(word(words[a]))},
                  {"b", to_string(word(words[b]))},
                  {"lhs", to_string(lhs, N)},
                  {"rhs", to_string(rhs, N)}});
    }
  rep.details["pairs"] = words.size() * words.size();
  rep.elapsed_ms = sw.ms();
  return rep;
}

// Θ with operator products applied left to right: L_σ L_ε E = M_ε M_σ E and
// R_σ R_ε E = E M_σ M_ε.
PolyMatrix hamiltonian_apply(const BracketSpec& s, int al, int be, const PolyMatrix& E, int N) {
  PolyMatrix out = zero_matrix(N);
  auto acc = [&](const PolyMatrix& t, const Rational& c) {
    if (is_zero(c)) return;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) out[i][j] += t[i][j] * c;
  };
  std::vector<PolyMatrix> M;
  for (int g = 0; g < s.m; ++g) M.push_back(generic_matrix(N, g));
  switch (s.kind) {
    case BracketKind::constant:
      throw InputError("no Hamiltonian operator for the constant kind");
    case BracketKind::linear:
      for (int g = 0; g < s.m; ++g) {
        acc(matmul(M[g], E), s.b(al, be, g));
        acc(matmul(E, M[g]), -s.b(be, al, g));
      }
      break;
    case BracketKind::quadratic:
      for (int g = 0; g < s.m; ++g)
        for (int e = 0; e < s.m; ++e) {
          acc(matmul(matmul(M[e], M[g]), E), s.a(al, be, g, e));
          acc(matmul(E, matmul(M[g], M[e])), -s.a(be, al, e, g));
          acc(matmul(matmul(M[g], E), M[e]), s.r(al, be, g, e));
        }
      break;
  }
  return out;
}

// {x^j_{i,α}, x^{j'}_{i',β}} = Tr(e_{i'j'} Θ_{αβ}(e_{ij}))
CheckReport check_hamiltonian_form(const BracketSpec& s, int N) {
  Stopwatch sw;
  CheckReport rep;
  rep.tag = "PoissonTr2";
  for (int al = 0; al < s.m && rep.pass; ++al)
    for (int be = 0; be < s.m && rep.pass; ++be)
      for (int i = 0; i < N && rep.pass; ++i)
        for (int j = 0; j < N && rep.pass; ++j) {
          PolyMatrix th = hamiltonian_apply(s, al, be, unit_matrix(N, i, j), N);
          for (int ip = 0; ip < N && rep.pass; ++ip)
            for (int jp = 0; jp < N && rep.pass; ++jp) {
              RepPoly lhs = poisson_generators(s, {i, j, al}, {ip, jp, be}, N);
              RepPoly rhs = trace(matmul(unit_matrix(N, ip, jp), th));
              if (lhs != rhs)
                rep.fail({{"p", coord_json({i, j, al})},
                          {"q", coord_json({ip, jp, be})},
                          {"bracket", to_string(lhs, N)},
                          {"hamiltonian", to_string(rhs, N)}});
            }
        }
  rep.elapsed_ms = sw.ms();
  return rep;
}

CheckReport check_conjugation_invariance(const BracketSpec& s, int N, const std::vector<NcWord>& words,
                                         const std::vector<int>& perm) {
  Stopwatch sw;
  CheckReport rep;
  rep.tag = "conjugation";
  for (std::size_t a = 0; a < words.size() && rep.pass; ++a)
    for (std::size_t b = 0; b < words.size() && rep.pass; ++b) {
      RepPoly p = poisson(s, trace_word(words[a], N), trace_word(words[b], N), N);
      RepPoly q = permute_colors(p, N, perm);
      if (p != q)
        rep.fail({{"a", to_string(word(words[a]))}, {"b", to_string(word(words[b]))}, {"bracket", to_string(p, N)}});
    }
  rep.elapsed_ms = sw.ms();
  return rep;
}

}  // namespace ybx
