// Copyright 2026 The Synthweb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "synthweb/jsonio.hpp"

namespace synthweb::eval {

struct UnitSpec {
  std::string canonical;
  double scale = 1.0;
  bool operator==(const UnitSpec&) const = default;
};

// Answer aliases plus unit vocabulary, released with every world as
// aliases.json. Alias keys and canonicals are stored in surface-normalized
// form so lookups are insensitive to case and punctuation.
class AliasTable {
 public:
  static constexpr std::string_view kSchema = "synthweb.aliases/1";

  AliasTable();

  // The built-in unit vocabulary (percent, km, MW, tonnes, households, ...).
  static AliasTable with_default_units();

  // Throws kConflict when `alias` already resolves to a different canonical.
  void add_alias(std::string_view canonical, std::string_view alias);
  void add_unit(std::string_view token, UnitSpec spec);

  // Canonical form for a surface-normalized string, if it is a known alias.
  std::optional<std::string> resolve(std::string_view surface) const;
  const UnitSpec* unit(std::string_view token) const;

  double numeric_rel_tol() const { return numeric_rel_tol_; }
  void set_numeric_rel_tol(double tol);

  const std::map<std::string, std::vector<std::string>>& aliases() const {
    return canonical_to_aliases_;
  }

  json to_json() const;
  static AliasTable from_json(const json& j);

  bool operator==(const AliasTable&) const = default;

 private:
  std::map<std::string, std::vector<std::string>> canonical_to_aliases_;
  std::map<std::string, std::string> alias_to_canonical_;
  std::map<std::string, UnitSpec> units_;
  double numeric_rel_tol_ = 0.005;
};

// Lowercase, strip punctuation, collapse whitespace, canonicalize units and
// re-render numbers in canonical decimal form. Alias resolution is not
// applied; deterministic_match does that so it can report how it matched.
std::string normalize_surface(std::string_view text, const AliasTable& aliases);

// normalize_surface followed by alias canonicalization.
std::string normalize_answer(std::string_view text, const AliasTable& aliases);

enum class MatchVia { kNone, kExact, kAlias, kNumeric, kJudge };

std::string_view to_string(MatchVia via);
MatchVia match_via_from_string(std::string_view s);

struct MatchResult {
  bool matched = false;
  MatchVia via = MatchVia::kNone;
};

// A single number with an optional canonical unit, e.g. "12.3 percent".
struct Quantity {
  double value = 0.0;
  bool integral = false;
  std::string unit;
};

// Parses a surface-normalized string consisting of exactly one number and at
// most one unit token.
std::optional<Quantity> parse_quantity(std::string_view surface);

// Inputs are surface-normalized. Exact string equality, else alias equality,
// else numeric equality within the table's relative tolerance (integers on
// both sides compare exactly).
MatchResult deterministic_match(std::string_view answer_surface, std::string_view truth_surface,
                                const AliasTable& aliases);

// Convenience: normalize both raw strings, then match.
MatchResult answers_match(std::string_view answer, std::string_view truth,
                          const AliasTable& aliases);

// Canonical decimal rendering: no exponent, no trailing zeros, no "-0".
std::string canonical_number(double value);

}  // namespace synthweb::eval
