// Copyright 2026 The ybx Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "json.hpp"

namespace ybx {

using json = nlohmann::ordered_json;

// Uniform result record for every checker.  counterexample is non-null
// exactly when pass is false.
struct CheckReport {
  std::string tag;
  bool pass = true;
  json counterexample;  // null while passing
  json details = json::object();
  double elapsed_ms = 0;

  // keeps the first failure only
  void fail(json payload) {
    if (!pass) return;
    pass = false;
    counterexample = std::move(payload);
  }
  json to_json(bool with_timing = false) const;
  std::string to_text() const;
};

class Stopwatch {
 public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

// SHA-256 of s as lowercase hex.
std::string sha256_hex(const std::string& s);

// Folds sub-reports into one; fails on the first failing part.
CheckReport combine(const std::string& tag, const std::vector<CheckReport>& parts);

}  // namespace ybx
