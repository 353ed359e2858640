// Copyright 2026 The ybx Authors
// SPDX-License-Identifier: Apache-2.0

#include "ybx/tensor.hpp"

namespace ybx {

namespace {

struct Layout {
  std::vector<int> rows, cols;  // axis positions, same site order
  std::size_t n = 1;
};

Layout layout_of(const LabeledTensor<Rational>& t) {
  Layout L;
  for (const auto& s : t.sites()) {
    if (!(s.row && s.col)) throw TensorError("inverse: site '" + s.name + "' is not an operator site");
    L.rows.push_back(t.axis_pos(s.name, Role::row));
    L.cols.push_back(t.axis_pos(s.name, Role::col));
    L.n *= std::size_t(s.dim);
  }
  return L;
}

std::pair<std::size_t, std::size_t> split(const LabeledTensor<Rational>& t, const Layout& L, std::size_t k) {
  auto idx = t.unravel(k);
  std::size_t r = 0, c = 0;
  for (std::size_t i = 0; i < L.rows.size(); ++i) {
    std::size_t d = std::size_t(t.axes()[L.rows[i]].dim);
    r = r * d + std::size_t(idx[L.rows[i]]);
    c = c * d + std::size_t(idx[L.cols[i]]);
  }
  return {r, c};
}

}  // namespace

std::vector<std::vector<Rational>> as_matrix(const LabeledTensor<Rational>& t) {
  Layout L = layout_of(t);
  std::vector<std::vector<Rational>> M(L.n, std::vector<Rational>(L.n));
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (is_zero(t[k])) continue;
    auto [r, c] = split(t, L, k);
    M[r][c] = t[k];
  }
  return M;
}

namespace {

// Reduces M to the identity in place while applying the same row operations
// to Inv.  Returns the determinant (0 when singular).
Rational gauss_jordan(std::vector<std::vector<Rational>>& M, std::vector<std::vector<Rational>>* Inv) {
  const std::size_t n = M.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(M[p][c])) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(M[p], M[c]);
      if (Inv) std::swap((*Inv)[p], (*Inv)[c]);
      det = -det;
    }
    Rational piv = M[c][c];
    det *= piv;
    for (std::size_t j = 0; j < n; ++j) {
      M[c][j] /= piv;
      if (Inv) (*Inv)[c][j] /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || is_zero(M[r][c])) continue;
      Rational f = M[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        if (!is_zero(M[c][j])) M[r][j] -= f * M[c][j];
        if (Inv && !is_zero((*Inv)[c][j])) (*Inv)[r][j] -= f * (*Inv)[c][j];
      }
    }
  }
  return det;
}

}  // namespace

Rational determinant(const LabeledTensor<Rational>& t) {
  auto M = as_matrix(t);
  return gauss_jordan(M, nullptr);
}

LabeledTensor<Rational> inverse(const LabeledTensor<Rational>& t) {
  Layout L = layout_of(t);
  auto M = as_matrix(t);
  std::vector<std::vector<Rational>> Inv(L.n, std::vector<Rational>(L.n));
  for (std::size_t i = 0; i < L.n; ++i) Inv[i][i] = 1;
  Rational det = gauss_jordan(M, &Inv);
  if (is_zero(det)) {
    SingularError e("inverse: singular operator (exact determinant 0)");
    e.determinant = 0;
    throw e;
  }
  LabeledTensor<Rational> r(t.axes());
  for (std::size_t k = 0; k < r.size(); ++k) {
    auto [a, b] = split(r, L, k);
    r[k] = Inv[a][b];
  }
  return r;
}

}  // namespace ybx
