// Copyright 2026 The ybx Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Flavored r-matrix embeddings of the linear and quadratic trace brackets,
// associative and classical Yang-Baxter checks, and the reflection form.
//
// Site names: flavor "f1","f2","f3" (dim m), color "c1","c2","c3" (dim N).
// Pure flavor operators (r_12, a_12, b_12) use sites "1","2","3".

#include "ybx/tensor.hpp"
#include "ybx/trace_poisson.hpp"

namespace ybx {

using QTensor = LabeledTensor<Rational>;
using PTensor = LabeledTensor<RepPoly>;

// r_12 = r^{γε}_{αβ} e_{αγ} ⊗ e_{βε}
QTensor flavor_r(const BracketSpec& s);
QTensor flavor_a(const BracketSpec& s);
// b_12 = b^γ_{αβ} e_{αγ} ⊗ e_β
QTensor flavor_b(const BracketSpec& s);
// relabel the sites of a two-site operator: (1,2) -> (p,q)
QTensor on_sites(const QTensor& t, const std::string& p, const std::string& q);

// X = x^j_{i,α} e_α ⊗ e_{ji} on sites f<k>, c<k>
PTensor generic_X(int N, int m, int k);
// 𝔯_12 = r ⊗ P over (f1,c1,f2,c2); also used for 𝔞
PTensor frak(const QTensor& t12, int N);
// B_12 with f2 a vector site
PTensor frak_b(const BracketSpec& s, int N);
PTensor swap_12(const PTensor& t);
PTensor to_poly(const QTensor& t);

// {X_1 ⊗, X_2} from the componentwise bracket; sites f1 (vector), c1, f2 (vector), c2
PTensor bracket_table(const BracketSpec& s, int N);

CheckReport check_aybe(const QTensor& r12);
CheckReport check_aybe_star(const QTensor& r12);
CheckReport check_linear_matrix_form(const BracketSpec& s, int N);
CheckReport check_linear_assoc_matrix(const BracketSpec& s, int N);
PTensor quadratic_matrix_form(const BracketSpec& s, int N);
CheckReport check_quadratic_matrix_form(const BracketSpec& s, int N);
CheckReport check_cybe_skew(const BracketSpec& s, int N);
CheckReport check_cybe_adjoint(const BracketSpec& s, int N);

// 𝔯̃_12 = 𝔯_12^{t_12}
PTensor frak_tilde(const PTensor& r12);
// (X_2^T X_1^T M)^{T_12}.  full_space: transpose flavor and color and use
// ordinary products.  Otherwise flavor-only transposition with the flavor
// covector rule of mul.
PTensor transposed_sandwich(const PTensor& X1, const PTensor& X2, const PTensor& M, bool full_space);
// right side of the reflection form
PTensor reflection_classical_bracket(const BracketSpec& s, int N, bool full_space = true);
CheckReport check_reflection_form(const BracketSpec& s, int N);

// first differing entry of two equally shaped tensors, or null
json tensor_difference(const QTensor& lhs, const QTensor& rhs);
json tensor_difference(const PTensor& lhs, const PTensor& rhs, int N);

}  // namespace ybx
