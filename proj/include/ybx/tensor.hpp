// Copyright 2026 The ybx Authors
// SPDX-License-Identifier: Apache-2.0

// Dense labeled tensors.  Every axis belongs to a *site* (an auxiliary space
// such as color 1, flavor I, ...) and carries a role: row (vector index) or
// column (covector index).  A site with both roles is an operator on it.

#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ybx/scalar.hpp"

namespace ybx {

enum class Kind { color, flavor };
enum class Role { row, col };

struct Axis {
  std::string site;
  Role role = Role::row;
  int dim = 1;
  Kind kind = Kind::color;

  std::string label() const { return site + (role == Role::row ? ".r" : ".c"); }
  friend bool operator==(const Axis&, const Axis&) = default;
};

struct SiteSpec {
  std::string name;
  int dim = 1;
  Kind kind = Kind::color;
  bool row = true;
  bool col = true;
  friend bool operator==(const SiteSpec&, const SiteSpec&) = default;
};

inline SiteSpec color(std::string n, int d) { return {std::move(n), d, Kind::color, true, true}; }
inline SiteSpec flavor(std::string n, int d) { return {std::move(n), d, Kind::flavor, true, true}; }
inline SiteSpec as_vector(SiteSpec s) { s.col = false; s.row = true; return s; }
inline SiteSpec as_covector(SiteSpec s) { s.row = false; s.col = true; return s; }

inline std::vector<Axis> axes_of(const std::vector<SiteSpec>& sites) {
  std::vector<Axis> ax;
  for (const auto& s : sites) {
    if (s.row) ax.push_back({s.name, Role::row, s.dim, s.kind});
    if (s.col) ax.push_back({s.name, Role::col, s.dim, s.kind});
  }
  return ax;
}

class TensorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class S>
class LabeledTensor {
 public:
  LabeledTensor() : data_(1) {}
  explicit LabeledTensor(std::vector<Axis> axes) : axes_(std::move(axes)) { init(); }
  explicit LabeledTensor(const std::vector<SiteSpec>& sites) : axes_(axes_of(sites)) { init(); }

  const std::vector<Axis>& axes() const { return axes_; }
  std::size_t rank() const { return axes_.size(); }
  std::size_t size() const { return data_.size(); }
  const std::vector<std::size_t>& strides() const { return strides_; }

  S& operator[](std::size_t k) { return data_[k]; }
  const S& operator[](std::size_t k) const { return data_[k]; }
  std::vector<S>& data() { return data_; }
  const std::vector<S>& data() const { return data_; }

  std::size_t offset(const std::vector<int>& idx) const {
    std::size_t o = 0;
    for (std::size_t a = 0; a < axes_.size(); ++a) o += std::size_t(idx[a]) * strides_[a];
    return o;
  }
  S& at(const std::vector<int>& idx) { return data_[offset(idx)]; }
  const S& at(const std::vector<int>& idx) const { return data_[offset(idx)]; }

  std::vector<int> unravel(std::size_t k) const {
    std::vector<int> idx(axes_.size());
    for (std::size_t a = 0; a < axes_.size(); ++a) {
      idx[a] = int(k / strides_[a]);
      k %= strides_[a];
    }
    return idx;
  }

  int axis_pos(const std::string& site, Role role) const {
    for (std::size_t a = 0; a < axes_.size(); ++a)
      if (axes_[a].site == site && axes_[a].role == role) return int(a);
    return -1;
  }
  int axis_pos(const std::string& label) const {
    for (std::size_t a = 0; a < axes_.size(); ++a)
      if (axes_[a].label() == label) return int(a);
    return -1;
  }

  std::vector<SiteSpec> sites() const {
    std::vector<SiteSpec> out;
    for (const auto& ax : axes_) {
      auto it = std::find_if(out.begin(), out.end(), [&](const SiteSpec& s) { return s.name == ax.site; });
      if (it == out.end()) {
        out.push_back({ax.site, ax.dim, ax.kind, false, false});
        it = out.end() - 1;
      }
      (ax.role == Role::row ? it->row : it->col) = true;
    }
    return out;
  }
  bool has_site(const std::string& n) const {
    return std::any_of(axes_.begin(), axes_.end(), [&](const Axis& a) { return a.site == n; });
  }

 private:
  void init() {
    std::set<std::string> seen;
    for (const auto& a : axes_) {
      if (a.dim <= 0) throw TensorError("axis " + a.label() + " has non-positive dimension");
      if (!seen.insert(a.label()).second) throw TensorError("duplicate axis label " + a.label());
    }
    strides_.assign(axes_.size(), 1);
    std::size_t n = 1;
    for (std::size_t a = axes_.size(); a-- > 0;) {
      strides_[a] = n;
      n *= std::size_t(axes_[a].dim);
    }
    data_.assign(n, S{});
  }

  std::vector<Axis> axes_;
  std::vector<std::size_t> strides_;
  std::vector<S> data_;
};

// ---------------------------------------------------------------------------
// elementwise
// ---------------------------------------------------------------------------

template <class T, class S, class F>
LabeledTensor<T> map_entries(const LabeledTensor<S>& t, F f) {
  LabeledTensor<T> r(t.axes());
  for (std::size_t k = 0; k < t.size(); ++k) r[k] = f(t[k]);
  return r;
}

template <class S>
LabeledTensor<S> permute_axes(const LabeledTensor<S>& t, const std::vector<std::string>& order) {
  if (order.size() != t.rank()) throw TensorError("permute_axes: label count mismatch");
  std::vector<Axis> ax;
  std::vector<int> src;
  std::set<std::string> used;
  for (const auto& l : order) {
    int p = t.axis_pos(l);
    if (p < 0 || !used.insert(l).second) throw TensorError("permute_axes: '" + l + "' is not a permutation entry");
    ax.push_back(t.axes()[p]);
    src.push_back(p);
  }
  LabeledTensor<S> r(ax);
  for (std::size_t k = 0; k < t.size(); ++k) {
    auto idx = t.unravel(k);
    std::size_t o = 0;
    for (std::size_t a = 0; a < src.size(); ++a) o += std::size_t(idx[src[a]]) * r.strides()[a];
    r[o] = t[k];
  }
  return r;
}

template <class S>
std::vector<std::string> labels(const LabeledTensor<S>& t) {
  std::vector<std::string> l;
  for (const auto& a : t.axes()) l.push_back(a.label());
  return l;
}

// Reorder u to the axis order of ref (same axis set required).
template <class S, class T>
LabeledTensor<S> align_to(const LabeledTensor<S>& u, const LabeledTensor<T>& ref) {
  if (u.axes() == ref.axes()) return u;
  if (u.rank() != ref.rank()) throw TensorError("align: axis sets differ");
  for (const auto& a : ref.axes()) {
    int p = u.axis_pos(a.label());
    if (p < 0 || !(u.axes()[p] == a)) throw TensorError("align: axis " + a.label() + " missing or mismatched");
  }
  return permute_axes(u, labels(ref));
}

template <class S>
LabeledTensor<S> operator+(const LabeledTensor<S>& a, const LabeledTensor<S>& b) {
  auto bb = align_to(b, a);
  LabeledTensor<S> r(a);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = r[k] + bb[k];
  return r;
}
template <class S>
LabeledTensor<S> operator-(const LabeledTensor<S>& a, const LabeledTensor<S>& b) {
  auto bb = align_to(b, a);
  LabeledTensor<S> r(a);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = r[k] - bb[k];
  return r;
}
template <class S, class C>
LabeledTensor<S> scale(const LabeledTensor<S>& a, const C& c) {
  LabeledTensor<S> r(a);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = r[k] * c;
  return r;
}

template <class S>
bool all_zero(const LabeledTensor<S>& t) {
  for (std::size_t k = 0; k < t.size(); ++k)
    if (!is_zero(t[k])) return false;
  return true;
}

// first nonzero entry, or size() when none
template <class S>
std::size_t first_nonzero(const LabeledTensor<S>& t) {
  for (std::size_t k = 0; k < t.size(); ++k)
    if (!is_zero(t[k])) return k;
  return t.size();
}

template <class S>
bool equal(const LabeledTensor<S>& a, const LabeledTensor<S>& b) {
  return all_zero(a - b);
}

template <class S>
std::string index_string(const LabeledTensor<S>& t, std::size_t k) {
  auto idx = t.unravel(k);
  std::ostringstream os;
  for (std::size_t a = 0; a < idx.size(); ++a) os << (a ? " " : "") << t.axes()[a].label() << "=" << idx[a] + 1;
  return os.str();
}

// ---------------------------------------------------------------------------
// structural operations
// ---------------------------------------------------------------------------

template <class S>
LabeledTensor<S> rename_sites(const LabeledTensor<S>& t, const std::map<std::string, std::string>& m) {
  std::vector<Axis> ax = t.axes();
  for (auto& a : ax) {
    auto it = m.find(a.site);
    if (it != m.end()) a.site = it->second;
  }
  LabeledTensor<S> r(ax);
  r.data() = t.data();
  return r;
}

// Swap row/column roles on the named sites.  A vector site becomes a
// covector site and back; an operator site is transposed.  Involutive.
template <class S>
LabeledTensor<S> partial_transpose(const LabeledTensor<S>& t, const std::set<std::string>& names) {
  for (const auto& n : names)
    if (!t.has_site(n)) throw TensorError("partial_transpose: no site '" + n + "'");
  std::vector<Axis> ax = t.axes();
  for (auto& a : ax)
    if (names.count(a.site)) a.role = a.role == Role::row ? Role::col : Role::row;
  LabeledTensor<S> flipped(ax);
  flipped.data() = t.data();
  // canonical order inside a site: row before column
  std::vector<std::string> order;
  for (const auto& s : flipped.sites()) {
    if (s.row) order.push_back(s.name + ".r");
    if (s.col) order.push_back(s.name + ".c");
  }
  return permute_axes(flipped, order);
}

template <class S>
LabeledTensor<S> identity(const std::vector<SiteSpec>& sites) {
  LabeledTensor<S> r(sites);
  for (const auto& s : sites)
    if (!(s.row && s.col)) throw TensorError("identity: site '" + s.name + "' is not an operator site");
  for (std::size_t k = 0; k < r.size(); ++k) {
    auto idx = r.unravel(k);
    bool diag = true;
    for (std::size_t a = 0; a + 1 < idx.size() && diag; a += 2) diag = idx[a] == idx[a + 1];
    if (diag) r[k] = S(1);
  }
  return r;
}

// Tensor with identities on the target sites that t lacks, then reorder to
// the target layout.
template <class S>
LabeledTensor<S> embed(const LabeledTensor<S>& t, const std::vector<SiteSpec>& target) {
  LabeledTensor<S> r(target);
  std::vector<int> src(r.rank(), -1);
  std::vector<std::pair<int, int>> diag;  // axis pairs that must agree
  for (std::size_t a = 0; a < r.rank(); ++a) {
    const auto& ax = r.axes()[a];
    int p = t.axis_pos(ax.site, ax.role);
    if (p >= 0) {
      if (!(t.axes()[p] == ax)) throw TensorError("embed: axis " + ax.label() + " mismatched");
      src[a] = p;
    } else if (t.has_site(ax.site)) {
      throw TensorError("embed: site '" + ax.site + "' has a different role layout");
    }
  }
  for (const auto& ax : t.axes())
    if (r.axis_pos(ax.site, ax.role) < 0) throw TensorError("embed: target lacks axis " + ax.label());
  for (const auto& s : target) {
    if (t.has_site(s.name)) continue;
    if (!(s.row && s.col)) throw TensorError("embed: padded site '" + s.name + "' must be an operator site");
    diag.push_back({r.axis_pos(s.name, Role::row), r.axis_pos(s.name, Role::col)});
  }
  for (std::size_t k = 0; k < r.size(); ++k) {
    auto idx = r.unravel(k);
    bool ok = true;
    for (auto [p, q] : diag) ok = ok && idx[p] == idx[q];
    if (!ok) continue;
    std::size_t o = 0;
    for (std::size_t a = 0; a < r.rank(); ++a)
      if (src[a] >= 0) o += std::size_t(idx[a]) * t.strides()[src[a]];
    r[k] = t[o];
  }
  return r;
}

// General contraction over explicit label pairs.  Result axes: unpaired axes
// of t, then unpaired axes of u.
template <class S>
LabeledTensor<S> contract(const LabeledTensor<S>& t, const LabeledTensor<S>& u,
                          const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<int> tp, up;
  for (const auto& [lt, lu] : pairs) {
    int a = t.axis_pos(lt), b = u.axis_pos(lu);
    if (a < 0 || b < 0) throw TensorError("contract: unknown label " + (a < 0 ? lt : lu));
    if (t.axes()[a].dim != u.axes()[b].dim || t.axes()[a].kind != u.axes()[b].kind)
      throw TensorError("contract: dimension/kind mismatch between " + lt + " and " + lu);
    tp.push_back(a);
    up.push_back(b);
  }
  std::vector<Axis> ax;
  std::vector<std::size_t> tstride_out(t.rank(), 0), ustride_out(u.rank(), 0);
  std::vector<int> tfree, ufree;
  for (std::size_t a = 0; a < t.rank(); ++a)
    if (std::find(tp.begin(), tp.end(), int(a)) == tp.end()) {
      tfree.push_back(int(a));
      ax.push_back(t.axes()[a]);
    }
  for (std::size_t a = 0; a < u.rank(); ++a)
    if (std::find(up.begin(), up.end(), int(a)) == up.end()) {
      ufree.push_back(int(a));
      ax.push_back(u.axes()[a]);
    }
  LabeledTensor<S> r(ax);
  for (std::size_t i = 0; i < tfree.size(); ++i) tstride_out[tfree[i]] = r.strides()[i];
  for (std::size_t i = 0; i < ufree.size(); ++i) ustride_out[ufree[i]] = r.strides()[tfree.size() + i];
  std::unordered_map<std::size_t, std::vector<std::size_t>> ubucket;
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (is_zero(u[k])) continue;
    auto idx = u.unravel(k);
    std::size_t key = 0;
    for (std::size_t i = 0; i < up.size(); ++i) key = key * std::size_t(u.axes()[up[i]].dim) + std::size_t(idx[up[i]]);
    ubucket[key].push_back(k);
  }
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (is_zero(t[k])) continue;
    auto idx = t.unravel(k);
    std::size_t key = 0, ot = 0;
    for (std::size_t i = 0; i < tp.size(); ++i) key = key * std::size_t(t.axes()[tp[i]].dim) + std::size_t(idx[tp[i]]);
    for (int a : tfree) ot += std::size_t(idx[a]) * tstride_out[a];
    auto it = ubucket.find(key);
    if (it == ubucket.end()) continue;
    for (std::size_t kb : it->second) {
      auto jdx = u.unravel(kb);
      std::size_t o = ot;
      for (int a : ufree) o += std::size_t(jdx[a]) * ustride_out[a];
      r[o] = r[o] + t[k] * u[kb];
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Site product.  Sites present in only one factor pass through (identity on
// the other).  On a shared site the left column contracts the right row.
// The flavor-transposition convention: a covector (column only) against a
// full operator contracts the operator's *column* and keeps its row as the
// new covector index.  Left-to-right operand order is kept in every scalar
// product, so noncommutative entries are safe.
// ---------------------------------------------------------------------------

template <class S>
LabeledTensor<S> mul_impl(const LabeledTensor<S>& A, const LabeledTensor<S>& B, bool covector_rule) {
  const auto sa = A.sites(), sb = B.sites();
  auto find = [](const std::vector<SiteSpec>& v, const std::string& n) -> const SiteSpec* {
    for (const auto& s : v)
      if (s.name == n) return &s;
    return nullptr;
  };
  struct Link { int a, b; };        // contracted axis positions
  struct Out { int src; int pos; };  // src: 0 = A, 1 = B ; pos = axis position
  std::vector<SiteSpec> rs;
  std::vector<Link> links;
  std::vector<std::pair<int, int>> out_src;  // per result axis
  auto push_site = [&](SiteSpec s, int rsrc, int rpos, int csrc, int cpos) {
    rs.push_back(s);
    if (s.row) out_src.push_back({rsrc, rpos});
    if (s.col) out_src.push_back({csrc, cpos});
  };
  for (const auto& s : sa) {
    const SiteSpec* t = find(sb, s.name);
    if (!t) {
      push_site(s, 0, A.axis_pos(s.name, Role::row), 0, A.axis_pos(s.name, Role::col));
      continue;
    }
    if (s.dim != t->dim || s.kind != t->kind) throw TensorError("mul: site '" + s.name + "' shape mismatch");
    if (covector_rule && !s.row && s.col && t->row && t->col) {
      links.push_back({A.axis_pos(s.name, Role::col), B.axis_pos(s.name, Role::col)});
      push_site({s.name, s.dim, s.kind, false, true}, 0, -1, 1, B.axis_pos(s.name, Role::row));
    } else if (s.col && t->row) {
      links.push_back({A.axis_pos(s.name, Role::col), B.axis_pos(s.name, Role::row)});
      SiteSpec n{s.name, s.dim, s.kind, s.row, t->col};
      if (n.row || n.col)
        push_site(n, 0, A.axis_pos(s.name, Role::row), 1, B.axis_pos(s.name, Role::col));
    } else {
      throw TensorError("mul: incompatible roles at site '" + s.name + "'");
    }
  }
  for (const auto& t : sb)
    if (!find(sa, t.name)) push_site(t, 1, B.axis_pos(t.name, Role::row), 1, B.axis_pos(t.name, Role::col));

  LabeledTensor<S> R(rs);
  std::vector<std::size_t> a_out(A.rank(), 0), b_out(B.rank(), 0);
  for (std::size_t i = 0; i < out_src.size(); ++i) {
    auto [src, pos] = out_src[i];
    (src == 0 ? a_out : b_out)[pos] = R.strides()[i];
  }
  std::vector<std::size_t> a_key(A.rank(), 0), b_key(B.rank(), 0);
  std::size_t kstride = 1;
  for (std::size_t i = links.size(); i-- > 0;) {
    a_key[links[i].a] = kstride;
    b_key[links[i].b] = kstride;
    kstride *= std::size_t(A.axes()[links[i].a].dim);
  }
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> bucket(kstride);  // (entry, out offset)
  for (std::size_t k = 0; k < B.size(); ++k) {
    if (is_zero(B[k])) continue;
    std::size_t rem = k, key = 0, o = 0;
    for (std::size_t a = 0; a < B.rank(); ++a) {
      std::size_t i = rem / B.strides()[a];
      rem %= B.strides()[a];
      key += i * b_key[a];
      o += i * b_out[a];
    }
    bucket[key].push_back({k, o});
  }
  for (std::size_t k = 0; k < A.size(); ++k) {
    if (is_zero(A[k])) continue;
    std::size_t rem = k, key = 0, o = 0;
    for (std::size_t a = 0; a < A.rank(); ++a) {
      std::size_t i = rem / A.strides()[a];
      rem %= A.strides()[a];
      key += i * a_key[a];
      o += i * a_out[a];
    }
    for (auto [kb, ob] : bucket[key]) R[o + ob] = R[o + ob] + A[k] * B[kb];
  }
  return R;
}

template <class S>
LabeledTensor<S> mul(const LabeledTensor<S>& A, const LabeledTensor<S>& B) {
  return mul_impl(A, B, true);
}

// Ordinary products everywhere: a covector contracts the operator's row.
template <class S>
LabeledTensor<S> mul_plain(const LabeledTensor<S>& A, const LabeledTensor<S>& B) {
  return mul_impl(A, B, false);
}

template <class S>
LabeledTensor<S> mul(const LabeledTensor<S>& A, const LabeledTensor<S>& B, const LabeledTensor<S>& C) {
  return mul(mul(A, B), C);
}

// ---------------------------------------------------------------------------
// Exact inverse of an operator on all of its sites (every site must carry
// both roles).  Gauss-Jordan over Rational.
// ---------------------------------------------------------------------------

class SingularError : public TensorError {
 public:
  explicit SingularError(const std::string& what) : TensorError(what) {}
  Rational determinant{0};
};

LabeledTensor<Rational> inverse(const LabeledTensor<Rational>& t);
Rational determinant(const LabeledTensor<Rational>& t);

// row-major square matrix view of an operator: rows = row axes in site order
std::vector<std::vector<Rational>> as_matrix(const LabeledTensor<Rational>& t);

}  // namespace ybx
