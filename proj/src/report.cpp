// Copyright 2026 The ybx Authors
// SPDX-License-Identifier: Apache-2.0

#include "ybx/report.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <sstream>

namespace ybx {

json CheckReport::to_json(bool with_timing) const {
  json j;
  j["tag"] = tag;
  j["pass"] = pass;
  j["counterexample"] = counterexample;
  if (!details.empty()) j["details"] = details;
  if (with_timing) j["elapsed_ms"] = elapsed_ms;
  return j;
}

std::string CheckReport::to_text() const {
  std::ostringstream os;
  os << (pass ? "PASS " : "FAIL ") << tag;
  if (!pass) os << "\n  counterexample: " << counterexample.dump();
  if (!details.empty()) os << "\n  details: " << details.dump();
  return os.str();
}

std::string sha256_hex(const std::string& s) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(s.data(), s.size(), md, &len, EVP_sha256(), nullptr);
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

CheckReport combine(const std::string& tag, const std::vector<CheckReport>& parts) {
  CheckReport r;
  r.tag = tag;
  json sub = json::array();
  for (const auto& p : parts) {
    sub.push_back({{"tag", p.tag}, {"pass", p.pass}});
    r.elapsed_ms += p.elapsed_ms;
    if (!p.pass) r.fail({{"part", p.tag}, {"detail", p.counterexample}});
  }
  r.details["parts"] = sub;
  return r;
}

}  // namespace ybx
