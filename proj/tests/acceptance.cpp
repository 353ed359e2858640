// Copyright 2026 The ybx Authors
// SPDX-License-Identifier: Apache-2.0

// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.
//
// Criteria 5 and 7 contain parts that do not hold under any consistent
// reading (see README).  They are evaluated in full and reported as FAIL.
// The exit status is 0 only when every other criterion passes and those two
// fail exactly in the documented way, so a regression anywhere is visible.

#include <functional>
#include <iostream>

#include "ybx/dynamical.hpp"
#include "ybx/quantum.hpp"
#include "ybx/search.hpp"
#include "ybx/trace_poisson.hpp"

using namespace ybx;

namespace {

struct Outcome {
  bool pass = true;
  std::string note;
  json detail = json::object();
  bool documented_failure = false;  // fails as described in the README
};

void need(Outcome& o, bool ok, const std::string& what) {
  if (!ok && o.pass) {
    o.pass = false;
    o.note = what;
  }
}

Outcome criterion1() {
  Outcome o;
  Stopwatch sw;
  int n = 0;
  for (int m : {2, 3, 4}) {
    Rng g(100 + std::uint64_t(m));
    for (int k = 0; k < 100; ++k, ++n) need(o, check_double_jacobi(random_constant(m, g)).pass, "double Jacobi failed");
  }
  o.detail["specs"] = n;
  need(o, sw.ms() < 5000, "slower than 5 s");
  o.detail["ms"] = int(sw.ms());
  return o;
}

Outcome criterion2() {
  Outcome o;
  Stopwatch sw;
  BracketSpec b = matrix_algebra_constants(2);
  need(o, check_linear_assoc(b).pass, "associativity of b");
  need(o, check_double_jacobi(b).pass, "double Jacobi");
  need(o, check_linear_assoc_matrix(b, 2).pass, "B12 B13 = B23 B12");
  need(o, check_linear_matrix_form(b, 2).pass, "linear matrix form");
  need(o, check_hamiltonian_form(b, 2).pass, "Hamiltonian form");
  need(o, check_jacobi(b, 2).pass, "trace Jacobi at N=2");
  BracketSpec p = b;
  p.b(0, 0, 1) += 1;
  CheckReport r0 = check_linear_assoc(p), db = check_double_jacobi(p), tj = check_jacobi(p, 2);
  need(o, !r0.pass && !db.pass && !tj.pass, "perturbation not detected by all three checks");
  need(o, r0.details.value("db_agrees", false), "associativity and double Jacobi disagree on the perturbation");
  o.detail["perturbation_counterexamples"] = {{"associativity", r0.counterexample},
                                              {"double_jacobi", db.counterexample},
                                              {"trace_jacobi", tj.counterexample}};
  need(o, sw.ms() < 30000, "slower than 30 s");
  o.detail["ms"] = int(sw.ms());
  return o;
}

std::vector<BracketSpec> g_catalog;

Outcome criterion3() {
  Outcome o;
  Stopwatch sw;
  SearchOptions so;
  so.m = 2;
  so.support = 4;
  so.budget = 1000000;
  SearchResult r = search_quadratic(so);
  g_catalog = r.specs;
  int nontrivial = 0;
  for (const auto& s : r.specs) {
    nontrivial += !is_trivial(s);
    need(o, check_quadratic_relations(s).pass, "quadratic relations");
    need(o, check_jacobi(s, 1).pass && check_jacobi(s, 2).pass, "trace Jacobi");
    need(o, check_quadratic_matrix_form(s, 2).pass, "quadratic matrix form");
    need(o, check_reflection_form(s, 2).pass, "reflection form");
    need(o, check_cybe_skew(s, 2).pass, "CYBE of the skew part");
    if (a_symmetric(s)) need(o, check_cybe_adjoint(s, 2).pass, "adjoint CYBE");
  }
  need(o, nontrivial >= 1, "no nontrivial spec found");
  o.detail = {{"tested", r.tested}, {"solutions", r.specs.size()}, {"nontrivial", nontrivial}};
  need(o, sw.ms() < 300000, "slower than 5 min");
  o.detail["ms"] = int(sw.ms());
  return o;
}

Outcome criterion4() {
  Outcome o;
  int hits = 0;
  for (const auto& s : g_catalog) {
    QTensor r = flavor_r(s);
    CheckReport star = check_aybe_star(r);
    need(o, star.details.value("difference_identity", false), "AYBE - AYBE* identity");
    if (check_aybe(r).pass) {
      ++hits;
      need(o, check_cybe_skew(s, 2).pass, "AYBE solution fails CYBE");
    }
  }
  o.detail["aybe_solutions"] = hits;
  need(o, hits > 0, "no AYBE solution in the catalog");
  return o;
}

Outcome criterion5() {
  Outcome o;
  Stopwatch sw;
  Rng g(55);
  ABCDSystem s2 = random_system(2, 2, g), s1 = random_system(2, 1, g);
  CheckReport e2 = check_relation_equivalence(s2), e1 = check_relation_equivalence(s1);
  need(o, e2.pass, "etoile1 vs bivector form at m=2");
  bool distinct_m2 = !e2.details["etoile2_equivalent"].get<bool>();
  bool same_m1 = e1.details["etoile2_equivalent"].get<bool>();
  o.detail = {{"etoile1_equivalent", e2.pass},
              {"etoile2_distinct_at_m2", distinct_m2},
              {"etoile2_identical_at_m1", same_m1},
              {"etoile2_is_relabeling", e2.details["etoile2_is_relabeling"]}};
  need(o, same_m1, "etoile2 differs at m=1");
  need(o, distinct_m2, "etoile2 is not distinct at m=2 (it is a relabeling of etoile1)");
  o.documented_failure = e2.pass && same_m1 && !distinct_m2;
  need(o, sw.ms() < 60000, "slower than 1 min");
  o.detail["ms"] = int(sw.ms());
  return o;
}

Outcome criterion6() {
  Outcome o;
  Stopwatch sw;
  QTensor g2(std::vector<SiteSpec>{color("c1", 2), color("c2", 2)});
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g2.at({i, i, j, j}) = Rational((i + 1) * (j + 1));
  Rng g(66);
  QTensor F(std::vector<SiteSpec>{flavor("f1", 2), flavor("f2", 2)});
  for (std::size_t k = 0; k < F.size(); ++k) F[k] = rand_int(g, -2, 2);
  F = F + scale(identity<Rational>(F.sites()), Rational(6));
  ABCDSystem sys = build_decoupled(color_flip(2), g2, g2, color_flip(2), F, flavor_flip(2));
  QTensor R = build_R(sys);
  need(o, check_decoupled_color(sys).pass, "color relations");
  need(o, check_decoupled_flavor(sys).pass, "flavor relations");
  need(o, check_qybe(R).pass, "QYBE");
  need(o, check_unitarity(sys).pass, "unitarity");
  QTensor G(F.sites());
  for (std::size_t k = 0; k < G.size(); ++k) G[k] = rand_int(g, -1, 1);
  G = G + scale(identity<Rational>(G.sites()), Rational(5));
  need(o, equal(build_R(apply_gauge(sys, G)), R), "gauge changed R");
  need(o, sw.ms() < 120000, "slower than 2 min");
  o.detail["ms"] = int(sw.ms());
  return o;
}

Outcome criterion7() {
  Outcome o;
  Stopwatch sw;
  Rng g(77);
  int order0 = 0, y = 0, a_ok = 0, full = 0;
  const int n = 20;
  for (int k = 0; k < n; ++k) {
    BracketSpec s = random_quadratic(2, g, 2, true);
    ClassicalLimitResult r = classical_limit(s, 2, ProductRule::flavor_rule);
    order0 += r.order0;
    y += r.y_cancels;
    a_ok += r.a_sector["matches"].get<bool>();
    full += r.order0 && r.y_cancels && r.bracket_matches;
  }
  o.detail = {{"samples", n}, {"order0_vanishes", order0}, {"Y_cancels", y}, {"a_sector_matches", a_ok},
              {"order_hbar_matches", full}};
  need(o, order0 == n, "order hbar^0 does not vanish");
  need(o, y == n, "Y terms do not cancel");
  need(o, full == n, "order-hbar coefficient differs from the classical bracket in the r-sector");
  o.documented_failure = order0 == n && y == n && a_ok == n && full < n;
  need(o, sw.ms() < 60000, "slower than 1 min");
  o.detail["ms"] = int(sw.ms());
  return o;
}

Outcome criterion8() {
  Outcome o;
  Stopwatch sw;
  for (const auto& r : check_shift_identities()) {
    need(o, r.pass, r.tag + " failed");
    o.detail[r.tag] = r.details["samples"];
  }
  need(o, sw.ms() < 60000, "slower than 1 min");
  o.detail["ms"] = int(sw.ms());
  return o;
}

Outcome criterion9() {
  Outcome o;
  Stopwatch sw;
  const std::pair<int, int> sigs[] = {{-1, 1}, {-1, 0}, {-1, -1}};
  int runs = 0;
  for (auto [r, l] : sigs)
    for (std::uint64_t seed = 1; seed <= 5; ++seed, ++runs) {
      Rng g(seed);
      CheckReport rep = check_dyr_equivalence(random_dyn_system(2, 0, r, l, g, 1));
      need(o, rep.pass, "signature (" + std::to_string(r) + "," + std::to_string(l) + ") seed " +
                            std::to_string(seed));
      need(o, rep.details["shuffle_stable"].get<bool>(), "normal form depends on bracketing");
    }
  o.detail["systems"] = runs;
  need(o, sw.ms() < 120000, "slower than 2 min");
  o.detail["ms"] = int(sw.ms());
  return o;
}

Outcome criterion10() {
  Outcome o;
  auto run = [] {
    Rng g(10);
    return compare_dtral_modes(random_dyn_system(2, 2, -1, 1, g, 1));
  };
  CheckReport a = run(), b = run();
  need(o, a.details == b.details, "report not deterministic");
  need(o, a.details["narrow"]["terms"].get<std::size_t>() > 0 && a.details["broad"]["terms"].get<std::size_t>() > 0,
       "empty normal form");
  o.detail = {{"modes_differ", a.details["modes_differ"]},
              {"differing_entries", a.details["differing_entries"]},
              {"narrow_digest", a.details["narrow"]["digest"]},
              {"broad_digest", a.details["broad"]["digest"]}};
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"constant brackets satisfy double Jacobi", criterion1},
      {"linear equivalence chain for the 2x2 matrix algebra", criterion2},
      {"quadratic chain over the searched catalog", criterion3},
      {"AYBE solutions satisfy CYBE", criterion4},
      {"quantum bivectorization", criterion5},
      {"decoupled quantum suite", criterion6},
      {"quasi-classical limit", criterion7},
      {"shift-calculus identities", criterion8},
      {"dynamical bivector theorem", criterion9},
      {"flavored dynamical relation report", criterion10}};
  int k = 0, passed = 0, unexpected = 0;
  for (const auto& [name, f] : criteria) {
    ++k;
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note = std::string("exception: ") + e.what();
    }
    passed += o.pass;
    bool expected_fail = k == 5 || k == 7;
    if (!o.pass && !(expected_fail && o.documented_failure)) ++unexpected;
    if (o.pass && expected_fail) ++unexpected;  // would mean the analysis is stale
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << k << ": " << name;
    if (!o.pass) std::cout << " -- " << o.note << (o.documented_failure ? " (documented)" : "");
    std::cout << " " << o.detail.dump() << std::endl;
  }
  std::cout << passed << "/" << criteria.size() << " criteria pass";
  if (unexpected) std::cout << "; " << unexpected << " outcome(s) differ from the documented status";
  std::cout << std::endl;
  return unexpected ? 1 : 0;
}
