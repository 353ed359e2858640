// Copyright 2026 The ybx Authors
// SPDX-License-Identifier: Apache-2.0

// The free associative algebra on m generators, its tensor powers in
// Sweedler form, and the projection onto the trace space A/[A,A].
// Letters are 0-based internally and printed 1-based.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "ybx/scalar.hpp"

namespace ybx {

using NcWord = std::vector<int>;
using NcPoly = Poly<Word>;

class DegreeCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultDegreeCap = 6;

NcPoly gen(int a);
NcPoly word(const NcWord& w, const Rational& c = 1);
NcPoly multiply(const NcPoly& p, const NcPoly& q);
void check_degree(const NcPoly& p, int cap);

// element of A^{⊗k}, stored as a sum of pure tensors
class Sweedler {
 public:
  using key_type = std::vector<NcWord>;

  explicit Sweedler(int k = 2) : k_(k) {}
  int legs() const { return k_; }
  const std::map<key_type, Rational>& terms() const { return terms_; }
  bool zero() const { return terms_.empty(); }

  void add_term(const key_type& legs, const Rational& c);
  Sweedler& operator+=(const Sweedler& o);
  Sweedler& operator-=(const Sweedler& o);
  Sweedler& operator*=(const Rational& c);
  friend Sweedler operator+(Sweedler a, const Sweedler& b) { return a += b; }
  friend Sweedler operator-(Sweedler a, const Sweedler& b) { return a -= b; }
  friend Sweedler operator*(Sweedler a, const Rational& c) { return a *= c; }
  friend bool operator==(const Sweedler& a, const Sweedler& b) { return a.k_ == b.k_ && a.terms_ == b.terms_; }

  static Sweedler pure(const std::vector<NcPoly>& legs);

 private:
  int k_;
  std::map<key_type, Rational> terms_;
};

// a.(α⊗β).b = aα ⊗ βb
Sweedler outer_act(const NcPoly& a, const Sweedler& s, const NcPoly& b);
// a(α⊗β)b = αb ⊗ aβ
Sweedler inner_act(const NcPoly& a, const Sweedler& s, const NcPoly& b);
NcPoly mu(const Sweedler& s);
// (α⊗β)° = β⊗α
Sweedler swap_legs(const Sweedler& s);
// σ on A⊗A⊗A: v1⊗v2⊗v3 -> v3⊗v1⊗v2
Sweedler cycle3(const Sweedler& s);

NcWord min_rotation(const NcWord& w);
NcPoly cyclic_reduce(const NcPoly& p);

NcPoly random_poly(Rng& g, int m, int max_degree, int terms, int coef = 3);

std::string to_string(const NcWord& w);
std::string to_string(const NcPoly& p);
std::string to_string(const Sweedler& s);

}  // namespace ybx
