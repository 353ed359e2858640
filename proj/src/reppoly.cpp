// Copyright 2026 The ybx Authors
// SPDX-License-Identifier: Apache-2.0

#include <sstream>

#include "ybx/trace_poisson.hpp"

namespace ybx {

RepPoly coord(int N, const RepCoord& c) { return RepPoly::monomial({coord_index(N, c)}); }

namespace {

std::string coord_name(int N, int k) {
  RepCoord c = decode_coord(N, k);
  return "x^" + std::to_string(c.j + 1) + "_{" + std::to_string(c.i + 1) + "," + std::to_string(c.alpha + 1) + "}";
}

}  // namespace

std::string to_string(const RepPoly& p, int N) {
  if (p.zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : p.terms()) {
    if (!first) os << " + ";
    first = false;
    os << to_string(c);
    for (int v : k) os << "*" << coord_name(N, v);
  }
  return os.str();
}

json rep_poly_json(const RepPoly& p, int N) { return to_string(p, N); }

RepPoly trace_word(const NcWord& w, int N) {
  if (w.empty()) return RepPoly(N);
  const std::size_t n = w.size();
  std::vector<int> idx(n, 0);
  RepPoly out;
  for (;;) {
    std::vector<int> key;
    key.reserve(n);
    // (M_g)_{ab} = x^a_{b,g}
    for (std::size_t t = 0; t < n; ++t) key.push_back(coord_index(N, {idx[(t + 1) % n], idx[t], w[t]}));
    std::sort(key.begin(), key.end());
    out.add_term(key, 1);
    std::size_t p = 0;
    while (p < n && ++idx[p] == N) idx[p++] = 0;
    if (p == n) break;
  }
  return out;
}

RepPoly trace_poly(const NcPoly& p, int N) {
  RepPoly out;
  for (const auto& [w, c] : p.terms()) out += trace_word(w, N) * c;
  return out;
}

PolyMatrix generic_matrix(int N, int alpha) {
  PolyMatrix m = zero_matrix(N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) m[a][b] = coord(N, {b, a, alpha});
  return m;
}

PolyMatrix matmul(const PolyMatrix& a, const PolyMatrix& b) {
  const std::size_t n = a.size();
  PolyMatrix c(n, std::vector<RepPoly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].zero()) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

PolyMatrix unit_matrix(int N, int i, int j) {
  PolyMatrix m = zero_matrix(N);
  m[i][j] = RepPoly(1);
  return m;
}

RepPoly trace(const PolyMatrix& a) {
  RepPoly t;
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

RepPoly permute_colors(const RepPoly& p, int N, const std::vector<int>& perm) {
  RepPoly out;
  for (const auto& [k, c] : p.terms()) {
    std::vector<int> key;
    for (int v : k) {
      RepCoord x = decode_coord(N, v);
      key.push_back(coord_index(N, {perm[x.i], perm[x.j], x.alpha}));
    }
    std::sort(key.begin(), key.end());
    out.add_term(key, c);
  }
  return out;
}

}  // namespace ybx
