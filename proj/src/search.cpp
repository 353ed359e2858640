// Copyright 2026 The ybx Authors
// SPDX-License-Identifier: Apache-2.0

#include "ybx/search.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ybx {

namespace {

// A free parameter is one r entry per skew pair ((α,γ) < (β,ε)) or any a entry.
struct Param {
  bool is_r;
  int a, b, g, e;
};

std::vector<Param> free_params(int m) {
  std::vector<Param> ps;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int g = 0; g < m; ++g)
        for (int e = 0; e < m; ++e)
          if (std::make_pair(a, g) < std::make_pair(b, e)) ps.push_back({true, a, b, g, e});
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int g = 0; g < m; ++g)
        for (int e = 0; e < m; ++e) ps.push_back({false, a, b, g, e});
  return ps;
}

void assign(BracketSpec& s, const Param& p, const Rational& v) {
  if (p.is_r) {
    s.r(p.a, p.b, p.g, p.e) = v;
    s.r(p.b, p.a, p.e, p.g) = -v;
  } else {
    s.a(p.a, p.b, p.g, p.e) = v;
  }
}

double binom(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

SearchResult search_quadratic(const SearchOptions& opt) {
  if (opt.m < 1 || opt.support < 0 || opt.budget < 1) throw InputError("search: bad options");
  std::vector<int> nz;
  for (int c : opt.coefficients)
    if (c != 0) nz.push_back(c);
  std::sort(nz.begin(), nz.end());
  nz.erase(std::unique(nz.begin(), nz.end()), nz.end());
  const auto ps = free_params(opt.m);
  const int P = int(ps.size());
  const int K = std::min(opt.support, P);

  double space = 0;
  for (int k = 0; k <= K; ++k) space += binom(P, k) * std::pow(double(nz.size()), k);

  SearchResult res;
  auto test = [&](const std::vector<int>& pos, const std::vector<int>& val) {
    BracketSpec s = BracketSpec::quadratic(opt.m);
    for (std::size_t t = 0; t < pos.size(); ++t) assign(s, ps[pos[t]], nz[val[t]]);
    ++res.tested;
    if (check_quadratic_relations(s).pass) res.specs.push_back(s);
  };

  if (space <= double(opt.budget)) {
    res.exhaustive = true;
    // supports in increasing size, positions lexicographic, values odometer
    for (int k = 0; k <= K; ++k) {
      std::vector<int> pos(k);
      for (int t = 0; t < k; ++t) pos[t] = t;
      for (;;) {
        std::vector<int> val(k, 0);
        for (;;) {
          test(pos, val);
          int t = k - 1;
          while (t >= 0 && ++val[t] == int(nz.size())) val[t--] = 0;
          if (t < 0) break;
        }
        int t = k - 1;
        while (t >= 0 && pos[t] == P - k + t) --t;
        if (t < 0) break;
        ++pos[t];
        for (int u = t + 1; u < k; ++u) pos[u] = pos[u - 1] + 1;
      }
    }
  } else {
    Rng g(opt.seed);
    std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
    for (long n = 0; n < opt.budget; ++n) {
      int k = rand_int(g, 0, K);
      std::vector<int> all(P);
      for (int t = 0; t < P; ++t) all[t] = t;
      std::shuffle(all.begin(), all.end(), g);
      std::vector<int> pos(all.begin(), all.begin() + k);
      std::sort(pos.begin(), pos.end());
      std::vector<int> val(k);
      for (auto& v : val) v = rand_int(g, 0, int(nz.size()) - 1);
      if (!seen.insert({pos, val}).second) {
        ++res.tested;
        continue;
      }
      test(pos, val);
    }
  }
  if (res.specs.empty()) res.advisory = "budget exhausted without a solution";
  return res;
}

}  // namespace ybx
