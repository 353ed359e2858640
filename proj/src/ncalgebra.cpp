// Copyright 2026 The ybx Authors
// SPDX-License-Identifier: Apache-2.0

#include "ybx/ncalgebra.hpp"

#include <algorithm>
#include <sstream>

namespace ybx {

NcPoly gen(int a) { return NcPoly::monomial({a}); }
NcPoly word(const NcWord& w, const Rational& c) { return NcPoly::monomial(w, c); }
NcPoly multiply(const NcPoly& p, const NcPoly& q) { return p * q; }

void check_degree(const NcPoly& p, int cap) {
  if (p.degree() > cap)
    throw DegreeCapError("degree " + std::to_string(p.degree()) + " exceeds cap " + std::to_string(cap));
}

void Sweedler::add_term(const key_type& legs, const Rational& c) {
  if (is_zero(c)) return;
  if (int(legs.size()) != k_) throw std::logic_error("Sweedler: wrong number of legs");
  auto it = terms_.find(legs);
  if (it == terms_.end()) {
    terms_.emplace(legs, c);
  } else {
    it->second += c;
    if (is_zero(it->second)) terms_.erase(it);
  }
}

Sweedler& Sweedler::operator+=(const Sweedler& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}
Sweedler& Sweedler::operator-=(const Sweedler& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}
Sweedler& Sweedler::operator*=(const Rational& c) {
  if (is_zero(c)) terms_.clear();
  for (auto& kv : terms_) kv.second *= c;
  return *this;
}

Sweedler Sweedler::pure(const std::vector<NcPoly>& legs) {
  Sweedler s(int(legs.size()));
  std::vector<std::pair<key_type, Rational>> acc{{{}, Rational(1)}};
  for (const auto& p : legs) {
    std::vector<std::pair<key_type, Rational>> next;
    for (const auto& [k, c] : acc)
      for (const auto& [w, d] : p.terms()) {
        auto kk = k;
        kk.push_back(w);
        next.push_back({kk, c * d});
      }
    acc.swap(next);
  }
  for (const auto& [k, c] : acc) s.add_term(k, c);
  return s;
}

namespace {

NcWord cat(const NcWord& a, const NcWord& b) {
  NcWord r(a);
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

void need2(const Sweedler& s) {
  if (s.legs() != 2) throw std::logic_error("expected an element of A(x)A");
}

}  // namespace

Sweedler outer_act(const NcPoly& a, const Sweedler& s, const NcPoly& b) {
  need2(s);
  Sweedler r(2);
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [k, c] : s.terms())
      for (const auto& [wb, cb] : b.terms()) r.add_term({cat(wa, k[0]), cat(k[1], wb)}, ca * c * cb);
  return r;
}

Sweedler inner_act(const NcPoly& a, const Sweedler& s, const NcPoly& b) {
  need2(s);
  Sweedler r(2);
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [k, c] : s.terms())
      for (const auto& [wb, cb] : b.terms()) r.add_term({cat(k[0], wb), cat(wa, k[1])}, ca * c * cb);
  return r;
}

NcPoly mu(const Sweedler& s) {
  need2(s);
  NcPoly r;
  for (const auto& [k, c] : s.terms()) r.add_term(cat(k[0], k[1]), c);
  return r;
}

Sweedler swap_legs(const Sweedler& s) {
  need2(s);
  Sweedler r(2);
  for (const auto& [k, c] : s.terms()) r.add_term({k[1], k[0]}, c);
  return r;
}

Sweedler cycle3(const Sweedler& s) {
  if (s.legs() != 3) throw std::logic_error("cycle3 expects three legs");
  Sweedler r(3);
  for (const auto& [k, c] : s.terms()) r.add_term({k[2], k[0], k[1]}, c);
  return r;
}

NcWord min_rotation(const NcWord& w) {
  NcWord best = w;
  for (std::size_t i = 1; i < w.size(); ++i) {
    NcWord r(w.begin() + std::ptrdiff_t(i), w.end());
    r.insert(r.end(), w.begin(), w.begin() + std::ptrdiff_t(i));
    if (r < best) best = r;
  }
  return best;
}

NcPoly cyclic_reduce(const NcPoly& p) {
  NcPoly r;
  for (const auto& [w, c] : p.terms()) r.add_term(min_rotation(w), c);
  return r;
}

NcPoly random_poly(Rng& g, int m, int max_degree, int terms, int coef) {
  NcPoly p;
  for (int t = 0; t < terms; ++t) {
    int d = rand_int(g, 0, max_degree);
    NcWord w(std::size_t(d), 0);
    for (auto& l : w) l = rand_int(g, 0, m - 1);
    int c = 0;
    while (c == 0) c = rand_int(g, -coef, coef);
    p.add_term(w, c);
  }
  return p;
}

std::string to_string(const NcWord& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  for (int l : w) os << "x" << l + 1;
  return os.str();
}

std::string to_string(const NcPoly& p) {
  if (p.zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    os << (first ? "" : " + ") << to_string(c) << "*" << to_string(w);
    first = false;
  }
  return os.str();
}

std::string to_string(const Sweedler& s) {
  if (s.zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : s.terms()) {
    os << (first ? "" : " + ") << to_string(c) << "*";
    for (std::size_t i = 0; i < k.size(); ++i) os << (i ? "(x)" : "") << to_string(k[i]);
    first = false;
  }
  return os.str();
}

}  // namespace ybx
