// Copyright 2026 The ybx Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Coordinates of Rep_N(A) and the induced trace-Poisson bracket.

#include <set>

#include "ybx/bracket.hpp"

namespace ybx {

// x^j_{i,α} = (M_α)_{ji}; indices are 0-based.
struct RepCoord {
  int i = 0, j = 0, alpha = 0;
  friend bool operator==(const RepCoord&, const RepCoord&) = default;
};

using RepPoly = Poly<SortedWord>;
using PolyMatrix = std::vector<std::vector<RepPoly>>;

inline int coord_index(int N, const RepCoord& c) { return (c.alpha * N + c.i) * N + c.j; }
inline RepCoord decode_coord(int N, int k) { return {(k / N) % N, k % N, k / (N * N)}; }
RepPoly coord(int N, const RepCoord& c);

std::string to_string(const RepPoly& p, int N);
json rep_poly_json(const RepPoly& p, int N);

RepPoly trace_word(const NcWord& w, int N);
RepPoly trace_poly(const NcPoly& p, int N);

inline PolyMatrix zero_matrix(int N) { return PolyMatrix(std::size_t(N), std::vector<RepPoly>(std::size_t(N))); }
// generic matrix M_α with (M_α)_{ij} = x^i_{j,α}
PolyMatrix generic_matrix(int N, int alpha);
PolyMatrix matmul(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix unit_matrix(int N, int i, int j);  // e_ij
RepPoly trace(const PolyMatrix& a);

RepPoly poisson_generators(const BracketSpec& s, const RepCoord& p, const RepCoord& q, int N);
RepPoly poisson(const BracketSpec& s, const RepPoly& p, const RepPoly& q, int N);

// relabels color indices by a permutation: x^j_{i,α} -> x^{π j}_{π i,α}
RepPoly permute_colors(const RepPoly& p, int N, const std::vector<int>& perm);

CheckReport check_jacobi(const BracketSpec& s, int N, std::uint64_t seed = 1, int samples = 3);
CheckReport check_trace_morphism(const BracketSpec& s, int N, const std::vector<NcWord>& words);
// all words of length 1..max_len
std::vector<NcWord> all_words(int m, int max_len);

// Θ_{αβ}(E) for the linear and quadratic kinds
PolyMatrix hamiltonian_apply(const BracketSpec& s, int alpha, int beta, const PolyMatrix& E, int N);
CheckReport check_hamiltonian_form(const BracketSpec& s, int N);

CheckReport check_conjugation_invariance(const BracketSpec& s, int N, const std::vector<NcWord>& words,
                                         const std::vector<int>& perm);

}  // namespace ybx
