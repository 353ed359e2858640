// Copyright 2026 The ybx Authors
// SPDX-License-Identifier: Apache-2.0

// Double brackets on the free algebra given by structure constants, their
// Leibniz extension, and the skew / double Jacobi / (r0) / (r1)+(r2) checks.

#pragma once

#include <string>
#include <vector>

#include "ybx/ncalgebra.hpp"
#include "ybx/report.hpp"

namespace ybx {

enum class BracketKind { constant, linear, quadratic };

std::string kind_name(BracketKind k);

// Index conventions (0-based):
//   c(α,β)        = c_{αβ}
//   b(α,β,γ)      = b^γ_{αβ}
//   r(α,β,γ,ε)    = r^{γε}_{αβ},  a likewise
struct BracketSpec {
  int m = 1;
  BracketKind kind = BracketKind::constant;
  std::vector<Rational> cc, bb, rr, aa;

  static BracketSpec constant(int m);
  static BracketSpec linear(int m);
  static BracketSpec quadratic(int m);

  Rational& c(int a, int b) { return cc[std::size_t(a * m + b)]; }
  const Rational& c(int a, int b) const { return cc[std::size_t(a * m + b)]; }
  Rational& b(int a, int b, int g) { return bb[std::size_t((a * m + b) * m + g)]; }
  const Rational& b(int a, int b, int g) const { return bb[std::size_t((a * m + b) * m + g)]; }
  Rational& r(int a, int b, int g, int e) { return rr[idx4(a, b, g, e)]; }
  const Rational& r(int a, int b, int g, int e) const { return rr[idx4(a, b, g, e)]; }
  Rational& a(int a_, int b, int g, int e) { return aa[idx4(a_, b, g, e)]; }
  const Rational& a(int a_, int b, int g, int e) const { return aa[idx4(a_, b, g, e)]; }

  friend bool operator==(const BracketSpec&, const BracketSpec&) = default;

 private:
  std::size_t idx4(int a, int b, int g, int e) const { return std::size_t(((a * m + b) * m + g) * m + e); }
};

// Structural validation: skew c, (r1) for r.  Throws InputError.
void validate(const BracketSpec& s);

Sweedler bracket_generators(const BracketSpec& s, int alpha, int beta);
Sweedler bracket(const BracketSpec& s, const NcPoly& p, const NcPoly& q, int degree_cap = kDefaultDegreeCap);
NcPoly loday_bracket(const BracketSpec& s, const NcPoly& p, const NcPoly& q, int degree_cap = kDefaultDegreeCap);

// cyclic double Jacobi sum for one triple of elements, in A⊗A⊗A
Sweedler double_jacobi_sum(const BracketSpec& s, const NcPoly& u, const NcPoly& v, const NcPoly& w,
                           int degree_cap = kDefaultDegreeCap);

CheckReport check_skew(const BracketSpec& s, int sample_degree = 2, std::uint64_t seed = 1, int samples = 20);
CheckReport check_double_jacobi(const BracketSpec& s);
CheckReport check_linear_assoc(const BracketSpec& s);
CheckReport check_quadratic_relations(const BracketSpec& s);

// Sample families
BracketSpec random_constant(int m, Rng& g, int coef = 3);
BracketSpec matrix_algebra_constants(int n);  // m = n², generator n*i+j <-> e_ij

// r skew per (r1), a arbitrary (or symmetric under simultaneous swap)
BracketSpec random_quadratic(int m, Rng& g, int coef = 2, bool symmetric_a = false);
bool a_symmetric(const BracketSpec& s);  // a^{γε}_{αβ} = a^{εγ}_{βα}
bool is_trivial(const BracketSpec& s);

json spec_index_json(const std::vector<int>& idx);

}  // namespace ybx
