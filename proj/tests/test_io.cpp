// Copyright 2026 The ybx Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ybx/io.hpp"

using namespace ybx;
namespace fs = std::filesystem;

namespace {

SpecValue round_trip(const SpecValue& v) { return spec_from_json(json::parse(spec_to_json(v).dump())); }

std::string tmp_path(const char* name) { return (fs::temp_directory_path() / name).string(); }

json abcd_doc() {
  Rng g(2);
  return to_json(random_system(1, 2, g));
}

}  // namespace

TEST_CASE("bracket documents round-trip") {
  Rng g(1);
  std::vector<BracketSpec> specs{random_constant(3, g), matrix_algebra_constants(2), random_quadratic(2, g)};
  for (const auto& s : specs) {
    SpecValue v = round_trip(s);
    REQUIRE(std::holds_alternative<BracketSpec>(v));
    CHECK(std::get<BracketSpec>(v) == s);
    CHECK(canonical_digest(v) == canonical_digest(s));
  }
  json j = to_json(specs[0]);
  CHECK(j["c"][0][1].is_string());
  CHECK(j["c"][0][1].get<std::string>().find('/') != std::string::npos);
}

TEST_CASE("ABCD documents round-trip") {
  Rng g(3);
  ABCDSystem s = random_system(2, 2, g);
  auto v = round_trip(s);
  const auto& t = std::get<ABCDSystem>(v);
  CHECK(equal(t.A, s.A));
  CHECK(equal(t.D, s.D));
  CHECK(spec_to_json(v) == spec_to_json(s));

  QTensor g2(std::vector<SiteSpec>{color("c1", 2), color("c2", 2)});
  g2.at({0, 0, 0, 0}) = 1;
  g2.at({0, 0, 1, 1}) = 2;
  g2.at({1, 1, 0, 0}) = 2;
  g2.at({1, 1, 1, 1}) = 4;
  QTensor F = identity<Rational>({flavor("f1", 2), flavor("f2", 2)});
  F.at({0, 1, 1, 0}) += 3;
  ABCDSystem d = build_decoupled(color_flip(2), g2, g2, color_flip(2), F, flavor_flip(2));
  auto dv = round_trip(d);
  REQUIRE(std::get<ABCDSystem>(dv).parts.has_value());
  CHECK(spec_to_json(dv) == spec_to_json(d));
  // the decoupled section alone rebuilds the blocks
  json only = spec_to_json(d);
  for (const char* k : {"A", "B", "C", "D"}) only.erase(k);
  CHECK(spec_to_json(spec_from_json(only)) == spec_to_json(d));
  // inconsistent blocks are rejected
  json bad = spec_to_json(d);
  bad["A"][0] = "7/1";
  CHECK_THROWS_AS(spec_from_json(bad), InputError);
}

TEST_CASE("dynamical documents round-trip") {
  Rng g(4);
  for (int m : {0, 2}) {
    DynSystem s = random_dyn_system(2, m, -1, 1, g, 2);
    auto v = round_trip(s);
    const auto& t = std::get<DynSystem>(v);
    CHECK(equal(t.B, s.B));
    CHECK(t.W.color == s.W.color);
    CHECK(t.epsL == s.epsL);
    CHECK(spec_to_json(v) == spec_to_json(s));
  }
}

TEST_CASE("validation errors name the field") {
  auto msg = [](const json& j) -> std::string {
    try {
      spec_from_json(j);
    } catch (const InputError& e) {
      return e.what();
    }
    return "";
  };
  Rng g(5);
  json c = to_json(random_constant(2, g));
  json f = c;
  f["format"] = "other/2";
  CHECK(msg(f).find("format") != std::string::npos);
  json fl = c;
  fl["c"][0][1] = 0.5;
  CHECK(msg(fl).find("c[0][1]") != std::string::npos);
  json skew = c;
  skew["c"][0][1] = "1/1";
  skew["c"][1][0] = "1/1";
  CHECK(msg(skew).find("skew") != std::string::npos);
  json shape = c;
  shape["c"][0].erase(0);
  CHECK(msg(shape).find("length") != std::string::npos);
  json kind = c;
  kind["kind"] = "cubic";
  CHECK(msg(kind).find("kind") != std::string::npos);

  json a = abcd_doc();
  a["B"].erase(0);
  CHECK(msg(a).find("'B'") != std::string::npos);
  json ax = abcd_doc();
  ax["axes"] = {"color1", "color2", "flavorI", "flavorII"};
  CHECK(msg(ax).find("axes") != std::string::npos);

  DynSystem s = random_dyn_system(2, 0, -1, 1, g, 1);
  json d = to_json(s);
  d["B"][1] = {{"0,0", "1/1"}};  // B^{11}_{12}: not zero weight
  CHECK(msg(d).find("zero-weight") != std::string::npos);
  json w = to_json(s);
  w["weights"]["color"][0][0] = "1/2";
  CHECK(msg(w).find("integers") != std::string::npos);
  json e = to_json(s);
  e["A"][0] = {{"1", "1/1"}};
  CHECK(msg(e).find("A[0]") != std::string::npos);
}

TEST_CASE("parse errors carry a position") {
  std::string p = tmp_path("ybx_bad.json");
  {
    std::ofstream o(p);
    o << "{\n  \"format\": \"ybx-trace/1\",\n  \"kind\": \n}\n";
  }
  try {
    parse_spec(p);
    FAIL("no error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_spec(tmp_path("ybx_missing_file.json")), InputError);
  fs::remove(p);
}

TEST_CASE("catalog is idempotent by digest") {
  std::string p = tmp_path("ybx_catalog.jsonl");
  fs::remove(p);
  Rng g(6);
  BracketSpec s = random_quadratic(2, g), t = random_quadratic(2, g);
  CheckReport r;
  r.tag = "double-jacobi";
  CHECK(catalog_append(s, {r}, 6, p));
  CHECK_FALSE(catalog_append(s, {r}, 7, p));
  CHECK(catalog_append(t, {r}, 6, p));
  auto recs = catalog_read(p);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0]["digest"] == canonical_digest(s));
  CHECK(recs[0]["seed"] == 6);
  CHECK(recs[0]["checks"][0]["tag"] == "double-jacobi");
  fs::remove(p);
}

#ifdef YBX_DATA_DIR
TEST_CASE("bundled data files round-trip") {
  int n = 0;
  for (const auto& e : fs::directory_iterator(YBX_DATA_DIR)) {
    if (e.path().extension() != ".json") continue;
    ++n;
    INFO(e.path().string());
    std::ifstream in(e.path());
    json j = json::parse(in);
    SpecValue v = parse_spec(e.path().string());
    CHECK(spec_to_json(v) == j);
  }
  CHECK(n > 0);
}
#endif
