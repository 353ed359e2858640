// Copyright 2026 The ybx Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// JSON documents for bracket specs, ABCD systems and dynamical systems, and
// the line-delimited solution catalog.
//
// Every document carries "format": "ybx-trace/1" and a "kind".  Rationals are
// strings "p/q".  Operator arrays are flattened row-major, each space
// contributing its row index then its column index.

#include <variant>

#include "ybx/dynamical.hpp"
#include "ybx/quantum.hpp"

namespace ybx {

inline constexpr const char* kFormat = "ybx-trace/1";

using SpecValue = std::variant<BracketSpec, ABCDSystem, DynSystem>;

json to_json(const BracketSpec& s);
json to_json(const ABCDSystem& s);
json to_json(const DynSystem& s);
json spec_to_json(const SpecValue& v);

// Validates structure and the spec's own invariants; InputError names the field.
SpecValue spec_from_json(const json& j);
SpecValue parse_spec(const std::string& path);
void write_spec(const SpecValue& v, const std::string& path);

// SHA-256 of the canonical (compact) serialization
std::string canonical_digest(const SpecValue& v);

// Appends {digest, kind, spec, checks, seed, timestamp} unless a record with
// the same digest is already present.  Returns true when a line was written.
bool catalog_append(const SpecValue& v, const std::vector<CheckReport>& reports, std::uint64_t seed,
                    const std::string& path);
std::vector<json> catalog_read(const std::string& path);

}  // namespace ybx
