// Copyright 2026 The ybx Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Dynamical reflection relations as normal forms over shifted K symbols.
//
// Structure matrices are stored on sites c1, c2 (and f1, f2 when flavored).
// Relations are built on the bivector sites 1, 2, 1p, 2p (plus I, II).

#include <array>

#include "ybx/shift.hpp"

namespace ybx {

struct DynSystem {
  int N = 2;
  int m = 0;  // 0: no flavor spaces
  WeightScheme W;
  LTensor A, B, C, D;
  Rational epsR = -1, epsL = 1, epsF = -1;

  std::vector<SiteSpec> sites() const;  // c1 [f1] c2 [f2]
  int k_id(int i, int j, int alpha = 0) const { return m ? (i * N + j) * m + alpha : i * N + j; }
  std::string k_name(int id) const;
};

using Signature = std::vector<std::pair<std::string, Rational>>;
// zero-weight signatures of A, B, C, D (color part; flavor spaces get epsF)
std::array<Signature, 4> zero_weight_signatures(const DynSystem& s);
std::vector<CheckReport> check_system_weights(const DynSystem& s);

// n defaults to N (+ m).  Entries are random of λ-degree <= degree, reduced
// to their zero-weight part.
DynSystem random_dyn_system(int N, int m, const Rational& eR, const Rational& eL, Rng& g, int degree = 1,
                            int n = 0, const Rational& eF = -1);

// Σ_terms c(λ) · K-word per entry, trailing translations stripped, translated
// so the lexicographically smallest K shift in each entry is zero.
struct FormalRelation {
  std::vector<std::string> sites;  // order of the entry index
  std::map<std::vector<int>, std::map<std::vector<KSym>, LamPoly>> entries;

  std::size_t term_count() const;
  friend bool operator==(const FormalRelation&, const FormalRelation&) = default;
};

class WeightObstruction : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// lhs - rhs as a FormalRelation.  The two sides must carry the same single
// trailing translation in every entry.
FormalRelation normalize(const OTensor& lhs, const OTensor& rhs, const std::vector<std::string>& sites);
// multiplies a factor chain with a random bracketing when g is given
OTensor evaluate_chain(const std::vector<OTensor>& chain, Rng* g = nullptr);

json relation_json(const FormalRelation& r, const DynSystem& s);
std::string relation_digest(const FormalRelation& r, const DynSystem& s);
json first_difference(const FormalRelation& a, const FormalRelation& b, const DynSystem& s);

// Readings of the shift labels in the bivector relation.  sign_sr: sr_{a'}(ε)
// translates rows by sign_sr·ε·w(row); sign_kbar: K̄^{ij}(λ) = K^{ij}(λ + sign_kbar·ε_L·w(j)).
struct BivectorReading {
  int sign_sr = -1;
  int sign_kbar = -1;
};

std::vector<OTensor> dyr1_chain_lhs(const DynSystem& s);
std::vector<OTensor> dyr1_chain_rhs(const DynSystem& s);
FormalRelation dyr1_relation(const DynSystem& s, Rng* shuffle = nullptr);
FormalRelation dyr_relation(const DynSystem& s, const BivectorReading& rd = {}, Rng* shuffle = nullptr);
CheckReport check_dyr_equivalence(const DynSystem& s, const BivectorReading& rd = {});

enum class DtralMode { narrow, broad };
FormalRelation expand_dtral(const DynSystem& s, DtralMode mode, const BivectorReading& rd = {});
CheckReport compare_dtral_modes(const DynSystem& s, const BivectorReading& rd = {});

}  // namespace ybx
