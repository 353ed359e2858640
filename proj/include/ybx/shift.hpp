// Copyright 2026 The ybx Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// λ-dependent matrices and the shift calculus.
//
// λ ∈ Q^n.  A shift exponential e^{ε h_a ∂} is diagonal on space a with
// entry T_{ε w(i)} at index i, where T_v f(λ) = f(λ + v) T_v.  The entrywise
// forms below were unwound from the operator sandwiches; DynOp evaluates the
// sandwiches literally and is used as their oracle.

#include "ybx/report.hpp"
#include "ybx/tensor.hpp"

namespace ybx {

// Exponent vectors with trailing zeros stripped, so constants are {}.
struct TrimmedExponent {
  using key_type = std::vector<int>;
  static key_type one() { return {}; }
  static key_type mul(const key_type& a, const key_type& b) {
    key_type r = a.size() >= b.size() ? a : b;
    const key_type& s = a.size() >= b.size() ? b : a;
    for (std::size_t i = 0; i < s.size(); ++i) r[i] += s[i];
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }
  static int degree(const key_type& k) {
    int d = 0;
    for (int e : k) d += e;
    return d;
  }
};

using LamPoly = Poly<TrimmedExponent>;
using Shift = std::vector<Rational>;  // trailing zeros stripped
using LTensor = LabeledTensor<LamPoly>;

Shift trim(Shift v);
Shift operator+(const Shift& a, const Shift& b);
Shift operator*(const Rational& c, const Shift& v);
Shift negate(const Shift& v);

LamPoly lambda(int i);                            // λ_i (0-based)
LamPoly shift_poly(const LamPoly& p, const Shift& v);  // p(λ + v)
std::string to_string(const LamPoly& p);
json lam_json(const LamPoly& p, int n);          // {"e1,e2,...": "p/q"}
LamPoly lam_from_json(const json& j, int n);

struct WeightScheme {
  int n = 0;
  std::vector<Shift> color, flavor;  // w(i) for color index i, flavor index α
  const Shift& w(const Axis& a, int i) const;
  // δ_i for color, δ_{N+α} for flavor (flavor only when m > 0)
  static WeightScheme general_linear(int N, int m = 0);
};

// entrywise shifts along one site; the site must carry the addressed role
LTensor shift_row(const LTensor& M, const std::string& site, const Rational& eps, const WeightScheme& W);
LTensor shift_col(const LTensor& M, const std::string& site, const Rational& eps, const WeightScheme& W);
LTensor shift_vec(const LTensor& K, const std::string& site, const Rational& eps, const WeightScheme& W);
// M(λ + ε h_a) for a site M does not act on: M ⊗ 1_a with shifted entries
LTensor shift_outside(const LTensor& M, const SiteSpec& a, const Rational& eps, const WeightScheme& W);

// Σ_a ε_a (w(row_a) − w(col_a)) = 0 on every nonzero entry
CheckReport check_zero_weight(const LTensor& M, const std::vector<std::pair<std::string, Rational>>& signature,
                              const WeightScheme& W);

// M̃ with e^{ε_a h_a∂} M̃ e^{−ε_b h_b∂} = e^{−ε_b h_b∂} M e^{ε_a h_a∂}; needs
// [ε_a h_a + ε_b h_b, M] = 0 (InputError otherwise)
LTensor cross_shift(const LTensor& M, const std::string& a, const Rational& ea, const std::string& b,
                    const Rational& eb, const WeightScheme& W);
// M from M̃ (the same relation read the other way)
LTensor cross_shift_inverse(const LTensor& Mt, const std::string& a, const Rational& ea, const std::string& b,
                            const Rational& eb, const WeightScheme& W);
// named specializations for the structure matrices on sites c1, c2
LTensor conjug_A(const LTensor& A, const Rational& eR, const WeightScheme& W);
LTensor conjug_D(const LTensor& D, const Rational& eL, const WeightScheme& W);
LTensor conjug_B(const LTensor& B, const Rational& eR, const Rational& eL, const WeightScheme& W);
LTensor conjug_C(const LTensor& C, const Rational& eR, const Rational& eL, const WeightScheme& W);

// ---------------------------------------------------------------------------
// Literal operator engine: Σ c(λ) · K-word · T_w
// ---------------------------------------------------------------------------

struct KSym {
  int id = 0;
  Shift shift;  // K_id(λ + shift)
  friend auto operator<=>(const KSym&, const KSym&) = default;
};

struct OpKey {
  std::vector<KSym> word;
  Shift T;
  friend auto operator<=>(const OpKey&, const OpKey&) = default;
};

class DynOp {
 public:
  using map_type = std::map<OpKey, LamPoly>;
  DynOp() = default;
  DynOp(int c);                 // NOLINT
  DynOp(const LamPoly& c);      // NOLINT
  static DynOp translation(const Shift& v);
  static DynOp k(int id, const Shift& shift = {});

  const map_type& terms() const { return terms_; }
  bool zero() const { return terms_.empty(); }
  void add(const OpKey& k, const LamPoly& c);

  friend DynOp operator+(DynOp a, const DynOp& b);
  friend DynOp operator-(DynOp a, const DynOp& b);
  friend DynOp operator*(const DynOp& a, const DynOp& b);
  friend bool operator==(const DynOp& a, const DynOp& b) { return a.terms_ == b.terms_; }

 private:
  map_type terms_;
};

inline bool is_zero(const DynOp& d) { return d.zero(); }
std::string to_string(const DynOp& d);

using OTensor = LabeledTensor<DynOp>;
OTensor to_op(const LTensor& t);
// e^{ε h_a ∂} on site a
OTensor exp_shift(const SiteSpec& a, const Rational& eps, const WeightScheme& W);
// c-number part of an operator tensor without K symbols or residual T (InputError otherwise)
LTensor from_op(const OTensor& t);

// the sandwiches, evaluated literally
LTensor sandwich_row(const LTensor& M, const std::string& site, const Rational& eps, const WeightScheme& W);
LTensor sandwich_col(const LTensor& M, const std::string& site, const Rational& eps, const WeightScheme& W);
LTensor sandwich_outside(const LTensor& M, const SiteSpec& a, const Rational& eps, const WeightScheme& W);

// ---------------------------------------------------------------------------
// identity suite
// ---------------------------------------------------------------------------

struct ShiftSuiteOptions {
  int samples = 100;
  int max_N = 3, max_n = 3, max_degree = 2;
  std::uint64_t seed = 1;
};
LamPoly random_lampoly(Rng& g, int n, int degree, int coef = 2);
LTensor random_ltensor(const std::vector<SiteSpec>& sites, Rng& g, int n, int degree);
// keeps only entries that satisfy the zero-weight signature
LTensor zero_weight_part(const LTensor& M, const std::vector<std::pair<std::string, Rational>>& signature,
                         const WeightScheme& W);
std::vector<CheckReport> check_shift_identities(const ShiftSuiteOptions& o = {});

}  // namespace ybx
