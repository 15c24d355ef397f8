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

#include "synthweb/evalpipe/normalize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "synthweb/error.hpp"
#include "synthweb/text.hpp"

namespace synthweb::eval {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return c >= 'a' && c <= 'z'; }

bool is_number_token(std::string_view t) {
  if (t.empty() || !is_digit(t.front()) || !is_digit(t.back())) return false;
  bool dot = false;
  for (char c : t) {
    if (c == '.') {
      if (dot) return false;
      dot = true;
    } else if (!is_digit(c)) {
      return false;
    }
  }
  return true;
}

// Lowercases and rewrites punctuation into a whitespace-separated stream in
// which numbers keep their decimal point but lose thousands separators.
std::string punctuation_pass(std::string_view raw) {
  const std::string s = text::to_lower(raw);
  std::string out;
  out.reserve(s.size() + 8);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    const bool prev_digit = i > 0 && is_digit(s[i - 1]);
    const bool next_digit = i + 1 < s.size() && is_digit(s[i + 1]);
    if (c == '%') {
      out += " percent ";
    } else if (c == ',' && prev_digit && next_digit) {
      continue;
    } else if (c == '.' && prev_digit && next_digit) {
      out.push_back('.');
    } else if (c == '\'') {
      continue;
    } else if (static_cast<unsigned char>(c) < 0x80 && !text::is_ascii_alnum(c)) {
      out.push_back(' ');
    } else {
      out.push_back(c);
    }
  }
  return out;
}

// "1000km" -> {"1000", "km"}
void split_attached_unit(const std::string& tok, std::vector<std::string>& out) {
  std::size_t i = 0;
  while (i < tok.size() && (is_digit(tok[i]) || tok[i] == '.')) ++i;
  if (i > 0 && i < tok.size() && is_number_token(tok.substr(0, i)) &&
      std::all_of(tok.begin() + static_cast<std::ptrdiff_t>(i), tok.end(), is_alpha)) {
    out.push_back(tok.substr(0, i));
    out.push_back(tok.substr(i));
  } else {
    out.push_back(tok);
  }
}

}  // namespace

std::string canonical_number(double value) {
  if (value == 0.0 || !std::isfinite(value)) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10f", value);
  std::string s(buf);
  if (s.find('.') != std::string::npos) {
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

AliasTable::AliasTable() = default;

AliasTable AliasTable::with_default_units() {
  AliasTable t;
  for (auto tok : {"percent", "pct", "percentage"}) t.add_unit(tok, {"percent", 1.0});
  for (auto tok : {"km", "kms", "kilometer", "kilometers", "kilometre", "kilometres"})
    t.add_unit(tok, {"km", 1.0});
  for (auto tok : {"m", "meter", "meters", "metre", "metres"}) t.add_unit(tok, {"km", 0.001});
  for (auto tok : {"mw", "megawatt", "megawatts"}) t.add_unit(tok, {"mw", 1.0});
  for (auto tok : {"gw", "gigawatt", "gigawatts"}) t.add_unit(tok, {"mw", 1000.0});
  for (auto tok : {"kw", "kilowatt", "kilowatts"}) t.add_unit(tok, {"mw", 0.001});
  for (auto tok : {"t", "tonne", "tonnes", "ton", "tons"}) t.add_unit(tok, {"tonnes", 1.0});
  for (auto tok : {"household", "households", "homes", "home"})
    t.add_unit(tok, {"households", 1.0});
  for (auto tok : {"day", "days"}) t.add_unit(tok, {"days", 1.0});
  return t;
}

void AliasTable::add_unit(std::string_view token, UnitSpec spec) {
  if (!(spec.scale > 0.0)) throw invalid_argument("unit scale must be positive");
  units_[text::to_lower(token)] = std::move(spec);
}

const UnitSpec* AliasTable::unit(std::string_view token) const {
  const auto it = units_.find(std::string(token));
  return it == units_.end() ? nullptr : &it->second;
}

void AliasTable::set_numeric_rel_tol(double tol) {
  if (!(tol >= 0.0) || tol >= 1.0) throw invalid_argument("numeric_rel_tol must be in [0, 1)");
  numeric_rel_tol_ = tol;
}

void AliasTable::add_alias(std::string_view canonical, std::string_view alias) {
  const std::string c = normalize_surface(canonical, *this);
  const std::string a = normalize_surface(alias, *this);
  if (a.empty() || c.empty()) throw invalid_argument("empty alias or canonical");
  if (a == c) return;
  if (alias_to_canonical_.count(c)) {
    throw Error(ErrorCode::kConflict, "canonical '" + c + "' is already an alias of '" +
                                          alias_to_canonical_.at(c) + "'");
  }
  if (canonical_to_aliases_.count(a)) {
    throw Error(ErrorCode::kConflict, "alias '" + a + "' is itself a canonical form");
  }
  const auto it = alias_to_canonical_.find(a);
  if (it != alias_to_canonical_.end()) {
    if (it->second == c) return;
    throw Error(ErrorCode::kConflict,
                "alias '" + a + "' maps to both '" + it->second + "' and '" + c + "'");
  }
  alias_to_canonical_[a] = c;
  auto& list = canonical_to_aliases_[c];
  list.push_back(a);
  std::sort(list.begin(), list.end());
}

std::optional<std::string> AliasTable::resolve(std::string_view surface) const {
  const auto it = alias_to_canonical_.find(std::string(surface));
  if (it == alias_to_canonical_.end()) return std::nullopt;
  return it->second;
}

json AliasTable::to_json() const {
  json units = json::object();
  for (const auto& [tok, spec] : units_) {
    units[tok] = {{"canonical", spec.canonical}, {"scale", spec.scale}};
  }
  return {{"schema", kSchema},
          {"numeric_rel_tol", numeric_rel_tol_},
          {"aliases", canonical_to_aliases_},
          {"units", units}};
}

AliasTable AliasTable::from_json(const json& j) {
  require_schema(j, kSchema, "aliases.json");
  AliasTable t;
  t.set_numeric_rel_tol(j.at("numeric_rel_tol").get<double>());
  for (const auto& [tok, spec] : j.at("units").items()) {
    t.add_unit(tok, {spec.at("canonical").get<std::string>(), spec.at("scale").get<double>()});
  }
  for (const auto& [canonical, list] : j.at("aliases").items()) {
    for (const auto& alias : list) t.add_alias(canonical, alias.get<std::string>());
  }
  return t;
}

std::string normalize_surface(std::string_view raw, const AliasTable& aliases) {
  std::vector<std::string> tokens;
  for (auto& tok : text::split(text::collapse_whitespace(punctuation_pass(raw)), ' ')) {
    if (!tok.empty()) split_attached_unit(tok, tokens);
  }
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (is_number_token(tokens[i])) {
      tokens[i] = canonical_number(std::stod(tokens[i]));
      continue;
    }
    // Units only count as units right after a number; "homes" in a name
    // stays a word.
    const UnitSpec* u = aliases.unit(tokens[i]);
    if (!u || i == 0 || !is_number_token(tokens[i - 1])) continue;
    if (u->scale != 1.0) {
      tokens[i - 1] = canonical_number(std::stod(tokens[i - 1]) * u->scale);
    }
    tokens[i] = u->canonical;
  }
  return text::join(tokens, " ");
}

std::string normalize_answer(std::string_view text, const AliasTable& aliases) {
  std::string surface = normalize_surface(text, aliases);
  if (auto canonical = aliases.resolve(surface)) return *canonical;
  return surface;
}

std::string_view to_string(MatchVia via) {
  switch (via) {
    case MatchVia::kNone: return "none";
    case MatchVia::kExact: return "exact";
    case MatchVia::kAlias: return "alias";
    case MatchVia::kNumeric: return "numeric";
    case MatchVia::kJudge: return "judge";
  }
  return "none";
}

MatchVia match_via_from_string(std::string_view s) {
  for (auto v : {MatchVia::kNone, MatchVia::kExact, MatchVia::kAlias, MatchVia::kNumeric,
                 MatchVia::kJudge}) {
    if (to_string(v) == s) return v;
  }
  throw invalid_argument("unknown match kind: " + std::string(s));
}

std::optional<Quantity> parse_quantity(std::string_view surface) {
  const auto tokens = text::split(surface, ' ');
  if (tokens.empty() || tokens.size() > 2 || !is_number_token(tokens[0])) return std::nullopt;
  Quantity q;
  q.value = std::stod(tokens[0]);
  q.integral = tokens[0].find('.') == std::string::npos;
  if (tokens.size() == 2) {
    if (tokens[1].empty() || is_number_token(tokens[1])) return std::nullopt;
    q.unit = tokens[1];
  }
  return q;
}

MatchResult deterministic_match(std::string_view answer, std::string_view truth,
                                const AliasTable& aliases) {
  if (answer.empty() || truth.empty()) return {};
  if (answer == truth) return {true, MatchVia::kExact};
  const std::string a = aliases.resolve(answer).value_or(std::string(answer));
  const std::string t = aliases.resolve(truth).value_or(std::string(truth));
  if (a == t) return {true, MatchVia::kAlias};
  const auto qa = parse_quantity(a);
  const auto qt = parse_quantity(t);
  if (qa && qt && qa->unit == qt->unit) {
    if (qa->integral && qt->integral) return {};
    const double scale = std::max(std::fabs(qa->value), std::fabs(qt->value));
    if (scale == 0.0) return {true, MatchVia::kNumeric};
    if (std::fabs(qa->value - qt->value) / scale <= aliases.numeric_rel_tol()) {
      return {true, MatchVia::kNumeric};
    }
  }
  return {};
}

MatchResult answers_match(std::string_view answer, std::string_view truth,
                          const AliasTable& aliases) {
  return deterministic_match(normalize_surface(answer, aliases), normalize_surface(truth, aliases),
                             aliases);
}

}  // namespace synthweb::eval
