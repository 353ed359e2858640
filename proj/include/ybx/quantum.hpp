// Copyright 2026 The ybx Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Quantum trace reflection algebra: structure matrices A, B, C, D, the
// bivector R-matrix, relation equivalence, QYBE, unitarity, the decoupled
// color/flavor construction and the quasi-classical limit.
//
// A, B, C, D live on sites "c1" (color, N), "f1" (flavor, m), "c2", "f2".
// The bivector space uses "c1","c1p","fI" | "c2","c2p","fII".

#include <optional>

#include "ybx/rmatrix.hpp"

namespace ybx {

using KPoly = NcPoly;  // words in the K symbols
using KTensor = LabeledTensor<KPoly>;

// How a flavor covector meets a full flavor operator in the relations.
//   flavor_rule: contracts the operator's column (used by the classical
//                matrix forms)
//   ordinary:    contracts the operator's row
enum class ProductRule { flavor_rule, ordinary };
std::string rule_name(ProductRule r);

struct DecoupledParts {
  QTensor colorA, colorB, colorC, colorD;      // sites c1, c2
  QTensor flavorA, flavorB, flavorC, flavorD;  // sites f1, f2
  QTensor F, Rtilde, G;                        // sites f1, f2
};

struct ABCDSystem {
  int N = 1, m = 1;
  QTensor A, B, C, D;
  std::optional<DecoupledParts> parts;
};

std::vector<SiteSpec> abcd_sites(int N, int m);
ABCDSystem identity_system(int N, int m);
// random entries in [-2,2] plus 5 on the diagonal, so the blocks are invertible
ABCDSystem random_system(int N, int m, Rng& g);
// exchange spaces 1 and 2
QTensor swap_spaces(const QTensor& t);

// K symbol id for K^{ij}_α
inline int k_symbol(int N, int m, int i, int j, int alpha) { return (i * N + j) * m + alpha; }
std::string k_symbol_name(int N, int m, int id);

// ℛ = (C^{T_2'})^{-1} (D^{T_1'T_2'})^{-1} A B^{T_1'} on the six bivector sites
QTensor build_R(const ABCDSystem& sys);
// A B^{T_1'} and D^{T_1'T_2'} C^{T_2'} (before inversion)
QTensor fm_left(const ABCDSystem& sys);
QTensor fm_right(const ABCDSystem& sys);
// entry (i,q,μ,k,s,ν) of the component relation, evaluated from the index
// formula with the transpositions of the matrix form
KPoly component_relation(const ABCDSystem& sys, int i, int q, int mu, int k, int s, int nu);

KTensor etoile1(const ABCDSystem& sys, ProductRule rule);
KTensor etoile2(const ABCDSystem& sys, ProductRule rule);
KTensor fm_relation(const ABCDSystem& sys);       // ℛ𝒦𝒦 - 𝒦𝒦
KTensor fm_relation_pre(const ABCDSystem& sys);   // before the inverses

struct SpanRanks {
  std::size_t r1 = 0, r2 = 0, joint = 0;
  bool same() const { return r1 == joint && r2 == joint; }
};
SpanRanks compare_spans(const KTensor& a, const KTensor& b);

CheckReport check_relation_equivalence(const ABCDSystem& sys, ProductRule rule = ProductRule::ordinary);
CheckReport check_qybe(const QTensor& R);
CheckReport check_unitarity(const ABCDSystem& sys);

// M = M_flavor ⊗ M_color; B_{II,I} = C_{I,II} = F^{t_II}, R = F^{-1} R̃ F_21,
// A_flavor = G, D_flavor = (G R^{-1})^{t_I t_II}
ABCDSystem build_decoupled(const QTensor& colorA, const QTensor& colorB, const QTensor& colorC,
                           const QTensor& colorD, const QTensor& F, const QTensor& Rtilde,
                           const std::optional<QTensor>& G = std::nullopt);
ABCDSystem apply_gauge(const ABCDSystem& sys, const QTensor& G);
QTensor color_flip(int N);   // P on c1, c2
QTensor flavor_flip(int m);  // P on f1, f2
CheckReport check_decoupled_color(const ABCDSystem& sys);
CheckReport check_decoupled_flavor(const ABCDSystem& sys);

// Quasi-classical limit of the quantum relation with R = 1 - ħ𝔯, A = 1 + ħ𝔞,
// K = X + ħY.  Order ħ^0 must cancel modulo commutators, Y must drop out and
// the order-ħ relation must hold when {x,x'} is the trace-Poisson bracket.
struct ClassicalLimitResult {
  bool order0 = true, y_cancels = true, bracket_matches = true;
  json r_sector, a_sector;  // residuals with only r or only a switched on
  json counterexample;
};
ClassicalLimitResult classical_limit(const BracketSpec& s, int N, ProductRule rule);
CheckReport check_classical_limit(const BracketSpec& s, int N, ProductRule rule = ProductRule::flavor_rule);

}  // namespace ybx
