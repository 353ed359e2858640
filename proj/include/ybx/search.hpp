// Copyright 2026 The ybx Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Sparse search for quadratic (r, a) solving (r1) + (r2).

#include "ybx/bracket.hpp"

namespace ybx {

struct SearchOptions {
  int m = 2;
  int support = 4;           // max nonzero free parameters
  long budget = 1000000;     // max candidates tested
  std::uint64_t seed = 1;    // used only when the budget does not cover the space
  std::vector<int> coefficients{-1, 0, 1};
};

struct SearchResult {
  std::vector<BracketSpec> specs;  // in enumeration order
  long tested = 0;
  bool exhaustive = false;
  std::string advisory;  // set when nothing was found
};

SearchResult search_quadratic(const SearchOptions& opt);

}  // namespace ybx
