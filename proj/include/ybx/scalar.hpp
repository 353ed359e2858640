// Copyright 2026 The ybx Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ybx {

using Rational = mpq_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

// mpq's two-argument constructor does not canonicalize; this does.
inline Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

// "p/q", denominator always written
std::string to_string(const Rational& q);
// accepts "p/q" or "p"
Rational parse_rational(const std::string& s);

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Deterministic helpers shared by the checkers and tests.
using Rng = std::mt19937_64;
inline int rand_int(Rng& g, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(g);
}

// ---------------------------------------------------------------------------
// Polynomials over Rational.  The monomial policy decides how keys multiply:
//   SortedWord  commutative monomial as a sorted multiset of symbols
//   Word        noncommutative monomial (concatenation)
//   Exponent    fixed-length exponent vector
// ---------------------------------------------------------------------------

struct SortedWord {
  using key_type = std::vector<int>;
  static key_type one() { return {}; }
  static key_type mul(const key_type& a, const key_type& b) {
    key_type r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) r.push_back(a[i] <= b[j] ? a[i++] : b[j++]);
    while (i < a.size()) r.push_back(a[i++]);
    while (j < b.size()) r.push_back(b[j++]);
    return r;
  }
  static int degree(const key_type& k) { return int(k.size()); }
};

struct Word {
  using key_type = std::vector<int>;
  static key_type one() { return {}; }
  static key_type mul(const key_type& a, const key_type& b) {
    key_type r(a);
    r.insert(r.end(), b.begin(), b.end());
    return r;
  }
  static int degree(const key_type& k) { return int(k.size()); }
};

struct Exponent {
  using key_type = std::vector<int>;
  static key_type one() { return {}; }
  static key_type mul(const key_type& a, const key_type& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    key_type r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
  }
  static int degree(const key_type& k) {
    int d = 0;
    for (int e : k) d += e;
    return d;
  }
};

template <class M>
class Poly {
 public:
  using key_type = typename M::key_type;
  using map_type = std::map<key_type, Rational>;

  Poly() = default;
  Poly(int c) {  // NOLINT: implicit constant
    if (c) terms_[M::one()] = c;
  }
  Poly(const Rational& c) {  // NOLINT
    if (!is_zero(c)) terms_[M::one()] = c;
  }
  static Poly monomial(key_type k, const Rational& c = 1) {
    Poly p;
    if (!is_zero(c)) p.terms_[std::move(k)] = c;
    return p;
  }

  const map_type& terms() const { return terms_; }
  bool zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const key_type& k, const Rational& c) {
    if (is_zero(c)) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(k, c);
    } else {
      it->second += c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  Poly& operator*=(const Rational& c) {
    if (is_zero(c)) {
      terms_.clear();
    } else {
      for (auto& kv : terms_) kv.second *= c;
    }
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Rational(-1); }
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) r.add_term(M::mul(ka, kb), ca * cb);
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  int degree() const {
    int d = -1;
    for (const auto& kv : terms_) d = std::max(d, M::degree(kv.first));
    return d;
  }
  Rational constant() const {
    auto it = terms_.find(M::one());
    return it == terms_.end() ? Rational(0) : it->second;
  }

 private:
  map_type terms_;
};

template <class M>
bool is_zero(const Poly<M>& p) {
  return p.zero();
}

// ħ-jets: arithmetic modulo ħ².
template <class T>
struct HbarJet {
  T c0{}, c1{};

  HbarJet() = default;
  HbarJet(T a, T b = T{}) : c0(std::move(a)), c1(std::move(b)) {}  // NOLINT
  HbarJet(int c) : c0(T(c)) {}                                      // NOLINT

  friend HbarJet operator+(const HbarJet& a, const HbarJet& b) { return {a.c0 + b.c0, a.c1 + b.c1}; }
  friend HbarJet operator-(const HbarJet& a, const HbarJet& b) { return {a.c0 - b.c0, a.c1 - b.c1}; }
  friend HbarJet operator-(const HbarJet& a) { return {T{} - a.c0, T{} - a.c1}; }
  friend HbarJet operator*(const HbarJet& a, const HbarJet& b) {
    return {a.c0 * b.c0, a.c0 * b.c1 + a.c1 * b.c0};
  }
  HbarJet& operator+=(const HbarJet& o) { return *this = *this + o; }
  HbarJet& operator-=(const HbarJet& o) { return *this = *this - o; }
  friend bool operator==(const HbarJet& a, const HbarJet& b) { return a.c0 == b.c0 && a.c1 == b.c1; }
};

template <class T>
bool is_zero(const HbarJet<T>& j) {
  return is_zero(j.c0) && is_zero(j.c1);
}

}  // namespace ybx
