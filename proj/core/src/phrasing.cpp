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

#include "synthweb/phrasing.hpp"

#include <array>
#include <cctype>

#include "synthweb/error.hpp"
#include "synthweb/text.hpp"

namespace synthweb::phrasing {

namespace {

constexpr std::array<std::string_view, 6> kQuantityVerbs = {
    "stood at", "reached", "was reported at", "came in at", "was measured at", "totaled"};

constexpr std::array<std::string_view, 5> kEventVerbs = {
    "took place", "was recorded", "was completed", "was announced", "was confirmed"};

constexpr std::string_view kFactualPrefix = "what was the ";
constexpr std::string_view kComparisonPrefix = "which had the higher ";
constexpr std::string_view kTimelinePrefix =
    "place these events in chronological order: ";
constexpr std::string_view kEvaluationPrefix = "across ";
constexpr std::string_view kEvaluationMid = ", which recorded the highest ";

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_lower_alpha(char c) { return c >= 'a' && c <= 'z'; }

// Parses a rendered quantity starting at `pos` of lowercased text: digits
// with optional thousands separators and decimal part, then either '%' or a
// single space-separated unit word.
std::optional<std::string> read_value(std::string_view lower, std::string_view original,
                                      std::size_t pos) {
  std::size_t i = pos;
  if (i >= lower.size() || !is_digit(lower[i])) return std::nullopt;
  while (i < lower.size()) {
    if (is_digit(lower[i])) {
      ++i;
    } else if ((lower[i] == ',' || lower[i] == '.') && i + 1 < lower.size() &&
               is_digit(lower[i + 1])) {
      ++i;
    } else {
      break;
    }
  }
  if (i < lower.size() && lower[i] == '%') {
    return std::string(original.substr(pos, i + 1 - pos));
  }
  if (i + 1 < lower.size() && lower[i] == ' ' && is_lower_alpha(lower[i + 1])) {
    std::size_t j = i + 1;
    while (j < lower.size() && is_lower_alpha(lower[j])) ++j;
    return std::string(original.substr(pos, j - pos));
  }
  return std::string(original.substr(pos, i - pos));
}

std::optional<Date> read_long_date(std::string_view original, std::size_t pos) {
  // "March 14, 2024"
  const auto sp = original.find(' ', pos);
  if (sp == std::string_view::npos) return std::nullopt;
  const auto comma = original.find(", ", sp);
  if (comma == std::string_view::npos || comma - sp > 3) return std::nullopt;
  if (comma + 6 > original.size()) return std::nullopt;
  try {
    return parse_long_date(original.substr(pos, comma + 6 - pos));
  } catch (const Error&) {
    return std::nullopt;
  }
}

// After "<attribute> of <subject>": optional single adverb, then a quantity
// verb, then a value.
std::optional<std::string> value_after(std::string_view lower, std::string_view original,
                                       std::size_t pos) {
  if (pos >= lower.size() || lower[pos] != ' ') return std::nullopt;
  std::size_t p = pos + 1;
  for (int attempt = 0; attempt < 2; ++attempt) {
    for (auto verb : kQuantityVerbs) {
      if (lower.substr(p, verb.size()) == verb && p + verb.size() < lower.size() &&
          lower[p + verb.size()] == ' ') {
        return read_value(lower, original, p + verb.size() + 1);
      }
    }
    // Skip one adverb ("actually") and retry.
    std::size_t q = p;
    while (q < lower.size() && is_lower_alpha(lower[q])) ++q;
    if (q == p || q >= lower.size() || lower[q] != ' ') return std::nullopt;
    p = q + 1;
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(QueryType t) {
  switch (t) {
    case QueryType::kFactual: return "factual";
    case QueryType::kComparison: return "comparison";
    case QueryType::kTimeline: return "timeline";
    case QueryType::kEvaluation: return "evaluation";
  }
  return "factual";
}

QueryType query_type_from_string(std::string_view s) {
  for (auto t : kAllQueryTypes) {
    if (to_string(t) == s) return t;
  }
  throw invalid_argument("unknown query type: " + std::string(s));
}

std::span<const std::string_view> quantity_verbs() { return kQuantityVerbs; }
std::span<const std::string_view> event_verbs() { return kEventVerbs; }

std::string quantity_sentence(std::string_view lead, std::string_view attribute,
                              std::string_view subject, std::string_view verb,
                              std::string_view value) {
  std::string s;
  if (lead.empty()) {
    s = "The ";
  } else {
    s = std::string(lead) + ", the ";
  }
  s += std::string(attribute) + " of " + std::string(subject) + " " + std::string(verb) + " " +
       std::string(value) + ".";
  return s;
}

std::string event_sentence(std::string_view key, std::string_view verb, Date date) {
  return "The " + std::string(key) + " " + std::string(verb) + " on " + format_long_date(date) +
         ".";
}

std::string claim_sentence(std::string_view source, std::string_view reporting_verb,
                           std::string_view attribute, std::string_view subject,
                           std::string_view verb, std::string_view value, std::string_view tail) {
  return std::string(source) + " " + std::string(reporting_verb) + " that the " +
         std::string(attribute) + " of " + std::string(subject) + " actually " +
         std::string(verb) + " " + std::string(value) + ", " + std::string(tail) + ".";
}

std::string claim_event_sentence(std::string_view key, std::string_view verb, Date date,
                                 std::string_view source) {
  return "The " + std::string(key) + " actually " + std::string(verb) + " on " +
         format_long_date(date) + ", according to " + std::string(source) + ".";
}

std::vector<std::string> find_quantity_values(std::string_view body, std::string_view attribute,
                                              std::string_view subject) {
  const std::string lower = text::to_lower(body);
  const std::string needle = text::to_lower(std::string(attribute) + " of " + std::string(subject));
  std::vector<std::string> out;
  for (std::size_t pos = lower.find(needle); pos != std::string::npos;
       pos = lower.find(needle, pos + 1)) {
    if (auto v = value_after(lower, body, pos + needle.size())) out.push_back(*v);
  }
  return out;
}

std::vector<std::string> find_attribute_values(std::string_view body, std::string_view attribute) {
  const std::string lower = text::to_lower(body);
  const std::string needle = text::to_lower(std::string(attribute) + " of ");
  std::vector<std::string> out;
  for (std::size_t pos = lower.find(needle); pos != std::string::npos;
       pos = lower.find(needle, pos + 1)) {
    // Subject runs until the next quantity verb within this sentence.
    const auto stop = lower.find('.', pos + needle.size());
    for (std::size_t p = pos + needle.size(); p < lower.size() && p < stop; ++p) {
      if (lower[p] != ' ') continue;
      if (auto v = value_after(lower, body, p)) {
        out.push_back(*v);
        break;
      }
    }
  }
  return out;
}

std::vector<Date> find_event_dates(std::string_view body, std::string_view key) {
  const std::string lower = text::to_lower(body);
  const std::string needle = text::to_lower(key);
  std::vector<Date> out;
  for (std::size_t pos = lower.find(needle); pos != std::string::npos;
       pos = lower.find(needle, pos + 1)) {
    std::size_t p = pos + needle.size();
    if (p >= lower.size() || lower[p] != ' ') continue;
    ++p;
    if (lower.compare(p, 9, "actually ") == 0) p += 9;
    for (auto verb : kEventVerbs) {
      const std::string lead = std::string(verb) + " on ";
      if (lower.compare(p, lead.size(), lead) == 0) {
        if (auto d = read_long_date(body, p + lead.size())) out.push_back(*d);
        break;
      }
    }
  }
  return out;
}

std::optional<double> quantity_number(std::string_view rendered) {
  std::string digits;
  for (char c : rendered) {
    if (is_digit(c) || c == '.') {
      digits.push_back(c);
    } else if (c == ',') {
      continue;
    } else {
      break;
    }
  }
  if (digits.empty() || !is_digit(digits.front())) return std::nullopt;
  try {
    return std::stod(digits);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

// ---------------------------------------------------------------- questions

std::string factual_question(std::string_view attribute, std::string_view subject) {
  return "What was the " + std::string(attribute) + " of " + std::string(subject) + "?";
}

std::string comparison_question(std::string_view attribute, std::string_view a,
                                std::string_view b) {
  return "Which had the higher " + std::string(attribute) + ", " + std::string(a) + " or " +
         std::string(b) + "?";
}

std::string timeline_question(const std::vector<std::string>& keys) {
  return "Place these events in chronological order: " + text::join(keys, "; ") + ".";
}

std::string evaluation_question(std::string_view attribute,
                                const std::vector<std::string>& subjects) {
  std::string list;
  for (std::size_t i = 0; i < subjects.size(); ++i) {
    if (i > 0) list += (i + 1 == subjects.size()) ? ", and " : ", ";
    list += subjects[i];
  }
  return "Across " + list + ", which recorded the highest " + std::string(attribute) + "?";
}

std::string timeline_answer(const std::vector<std::string>& ordered_keys) {
  return text::join(ordered_keys, " < ");
}

std::optional<ParsedQuestion> parse_question(std::string_view question) {
  const std::string q = text::trim(question);
  const std::string lower = text::to_lower(q);
  auto strip_end = [&](char c) -> std::optional<std::string> {
    if (q.empty() || q.back() != c) return std::nullopt;
    return q.substr(0, q.size() - 1);
  };

  if (lower.rfind(kFactualPrefix, 0) == 0) {
    auto body = strip_end('?');
    if (!body) return std::nullopt;
    const std::string rest = body->substr(kFactualPrefix.size());
    const auto of = rest.find(" of ");
    if (of == std::string::npos) return std::nullopt;
    return ParsedQuestion{QueryType::kFactual, rest.substr(0, of), {rest.substr(of + 4)}};
  }
  if (lower.rfind(kComparisonPrefix, 0) == 0) {
    auto body = strip_end('?');
    if (!body) return std::nullopt;
    const std::string rest = body->substr(kComparisonPrefix.size());
    const auto comma = rest.find(", ");
    const auto orpos = rest.rfind(" or ");
    if (comma == std::string::npos || orpos == std::string::npos || orpos < comma) {
      return std::nullopt;
    }
    return ParsedQuestion{QueryType::kComparison,
                          rest.substr(0, comma),
                          {rest.substr(comma + 2, orpos - comma - 2), rest.substr(orpos + 4)}};
  }
  if (lower.rfind(kTimelinePrefix, 0) == 0) {
    auto body = strip_end('.');
    if (!body) return std::nullopt;
    ParsedQuestion p{QueryType::kTimeline, "", {}};
    for (auto& k : text::split(body->substr(kTimelinePrefix.size()), ';')) {
      auto key = text::trim(k);
      if (!key.empty()) p.subjects.push_back(key);
    }
    if (p.subjects.size() < 2) return std::nullopt;
    return p;
  }
  if (lower.rfind(kEvaluationPrefix, 0) == 0) {
    auto body = strip_end('?');
    if (!body) return std::nullopt;
    const std::string lbody = text::to_lower(*body);
    const auto mid = lbody.find(kEvaluationMid);
    if (mid == std::string::npos) return std::nullopt;
    ParsedQuestion p{QueryType::kEvaluation, body->substr(mid + kEvaluationMid.size()), {}};
    std::string list = body->substr(kEvaluationPrefix.size(), mid - kEvaluationPrefix.size());
    const auto and_pos = list.rfind(", and ");
    if (and_pos == std::string::npos) return std::nullopt;
    const std::string last = list.substr(and_pos + 6);
    for (auto& s : text::split(list.substr(0, and_pos), ',')) {
      auto name = text::trim(s);
      if (!name.empty()) p.subjects.push_back(name);
    }
    p.subjects.push_back(last);
    return p;
  }
  return std::nullopt;
}

}  // namespace synthweb::phrasing
