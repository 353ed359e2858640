// Copyright 2026 The ybx Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "ybx/trace_poisson.hpp"

using namespace ybx;

namespace {

BracketSpec c12() {
  BracketSpec s = BracketSpec::constant(2);
  s.c(0, 1) = 1;
  s.c(1, 0) = -1;
  return s;
}

// r and a from an exhaustive small search; passes r1+r2
BracketSpec good_quadratic() {
  BracketSpec s = BracketSpec::quadratic(2);
  s.r(0, 1, 1, 1) = 1;
  s.r(1, 0, 1, 1) = -1;
  s.a(0, 0, 0, 1) = 1;
  s.a(1, 0, 1, 1) = 1;
  return s;
}

// explicit product of two generic 2x2 matrices
RepPoly trace_pair_oracle(int a, int b) {
  const int N = 2;
  RepPoly t;
  for (int i = 0; i < N; ++i)
    for (int k = 0; k < N; ++k) t += coord(N, {i, k, a}) * coord(N, {k, i, b});
  return t;
}

}  // namespace

TEST_CASE("trace of words") {
  CHECK(trace_word({}, 2) == RepPoly(2));
  CHECK(trace_word({0}, 2) == coord(2, {0, 0, 0}) + coord(2, {1, 1, 0}));
  CHECK(trace_word({0, 1}, 2) == trace_pair_oracle(0, 1));
  CHECK(trace_word({0, 1}, 2) == trace_word({1, 0}, 2));
  CHECK(trace_word({0, 1, 1}, 3) == trace_word({1, 0, 1}, 3));
  // trace of the generic matrix product
  PolyMatrix p = matmul(generic_matrix(2, 0), generic_matrix(2, 1));
  CHECK(trace(p) == trace_word({0, 1}, 2));
}

TEST_CASE("generator brackets") {
  BracketSpec s = c12();
  CHECK(poisson_generators(s, {0, 0, 0}, {0, 0, 1}, 2) == RepPoly(1));
  CHECK(poisson_generators(s, {0, 1, 0}, {0, 1, 1}, 2).zero());
  Rng g(2);
  BracketSpec q = random_quadratic(2, g);
  for (int k = 0; k < 8; ++k) {
    RepCoord c = decode_coord(2, k);
    CHECK(poisson_generators(q, c, c, 2).zero());
  }
  // N = 1 collapse
  for (int al = 0; al < 2; ++al)
    for (int be = 0; be < 2; ++be) {
      RepPoly want;
      for (int ga = 0; ga < 2; ++ga)
        for (int e = 0; e < 2; ++e)
          want += coord(1, {0, 0, ga}) * coord(1, {0, 0, e}) * (q.r(al, be, ga, e) + q.a(al, be, ga, e) - q.a(be, al, ga, e));
      CHECK(poisson_generators(q, {0, 0, al}, {0, 0, be}, 1) == want);
    }
}

TEST_CASE("poisson is antisymmetric and a derivation") {
  Rng g(4);
  BracketSpec q = random_quadratic(2, g);
  const int N = 2;
  auto rnd = [&]() {
    RepPoly p;
    for (int t = 0; t < 3; ++t) {
      std::vector<int> k;
      for (int u = rand_int(g, 0, 2); u > 0; --u) k.push_back(rand_int(g, 0, 7));
      std::sort(k.begin(), k.end());
      p.add_term(k, rand_int(g, -2, 2));
    }
    return p;
  };
  for (int k = 0; k < 10; ++k) {
    RepPoly a = rnd(), b = rnd(), c = rnd();
    CHECK((poisson(q, a, b, N) + poisson(q, b, a, N)).zero());
    CHECK(poisson(q, a, b * c, N) == poisson(q, a, b, N) * c + b * poisson(q, a, c, N));
  }
}

TEST_CASE("trace Jacobi follows the double bracket checks") {
  Rng g(6);
  CHECK(check_jacobi(random_constant(3, g), 2).pass);
  BracketSpec lin = matrix_algebra_constants(2);
  CHECK(check_jacobi(lin, 1).pass);
  CHECK(check_jacobi(lin, 2).pass);
  BracketSpec bad = lin;
  bad.b(0, 0, 1) += 1;
  CHECK_FALSE(check_jacobi(bad, 2).pass);
  BracketSpec q = good_quadratic();
  CHECK(check_jacobi(q, 1).pass);
  CHECK(check_jacobi(q, 2).pass);
  q.a(1, 1, 0, 0) = 1;
  CHECK_FALSE(check_jacobi(q, 2).pass);
}

TEST_CASE("trace map is a Lie morphism") {
  BracketSpec s = c12();
  CHECK(poisson(s, trace_word({0}, 2), trace_word({1}, 2), 2) == RepPoly(2));
  CHECK(check_trace_morphism(s, 2, all_words(2, 2)).pass);
  CHECK(check_trace_morphism(matrix_algebra_constants(2), 2, all_words(4, 2)).pass);
  CHECK(check_trace_morphism(good_quadratic(), 2, all_words(2, 2)).pass);
}

TEST_CASE("Hamiltonian operator reproduces the bracket") {
  Rng g(8);
  for (int N = 1; N <= 3; ++N) {
    CHECK(check_hamiltonian_form(matrix_algebra_constants(2), N).pass);
    CHECK(check_hamiltonian_form(random_quadratic(2, g), N).pass);
  }
  BracketSpec lin = BracketSpec::linear(2);
  for (auto& q : lin.bb) q = rand_int(g, -2, 2);
  CHECK(check_hamiltonian_form(lin, 2).pass);
}

TEST_CASE("color permutation invariance of trace brackets") {
  Rng g(10);
  BracketSpec q = random_quadratic(2, g);
  CHECK(check_conjugation_invariance(q, 3, all_words(2, 2), {1, 2, 0}).pass);
  CHECK(check_conjugation_invariance(q, 2, all_words(2, 2), {1, 0}).pass);
}
