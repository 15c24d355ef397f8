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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "synthweb/dates.hpp"

// The sentence grammar shared by everything that writes or reads fact-bearing
// prose: the template realizer, the honeypot generator, the question
// templates and the scripted agents' reader. Writers and readers must agree on
// these shapes, so they live in one place.
namespace synthweb::phrasing {

enum class QueryType { kFactual, kComparison, kTimeline, kEvaluation };

inline constexpr QueryType kAllQueryTypes[] = {QueryType::kFactual, QueryType::kComparison,
                                               QueryType::kTimeline, QueryType::kEvaluation};

std::string_view to_string(QueryType t);
QueryType query_type_from_string(std::string_view s);

std::span<const std::string_view> quantity_verbs();
std::span<const std::string_view> event_verbs();

// "<lead>, the <attribute> of <subject> <verb> <value>." (lead may be empty)
std::string quantity_sentence(std::string_view lead, std::string_view attribute,
                              std::string_view subject, std::string_view verb,
                              std::string_view value);

// "The <key> <verb> on <Month D, YYYY>."
std::string event_sentence(std::string_view key, std::string_view verb, Date date);

// "<source> <reporting verb> that the <attribute> of <subject> actually
// <verb> <value>, <tail>."
std::string claim_sentence(std::string_view source, std::string_view reporting_verb,
                           std::string_view attribute, std::string_view subject,
                           std::string_view verb, std::string_view value, std::string_view tail);

// "The <key> actually <verb> on <date>, according to <source>."
std::string claim_event_sentence(std::string_view key, std::string_view verb, Date date,
                                 std::string_view source);

// Values stated for (attribute, subject) in reading order, as written
// ("12.3%", "1,450 megawatts").
std::vector<std::string> find_quantity_values(std::string_view body, std::string_view attribute,
                                              std::string_view subject);

// Dates stated for an event key in reading order.
std::vector<Date> find_event_dates(std::string_view body, std::string_view key);

// Every quantity stated for `attribute`, any subject, in reading order.
std::vector<std::string> find_attribute_values(std::string_view body, std::string_view attribute);

// Parses "12.3%" / "1,450 megawatts" into a number; nullopt otherwise.
std::optional<double> quantity_number(std::string_view rendered);

// ---------------------------------------------------------------- questions

std::string factual_question(std::string_view attribute, std::string_view subject);
std::string comparison_question(std::string_view attribute, std::string_view a,
                                std::string_view b);
std::string timeline_question(const std::vector<std::string>& keys);
std::string evaluation_question(std::string_view attribute,
                                const std::vector<std::string>& subjects);

// "k1 < k2 < k3"
std::string timeline_answer(const std::vector<std::string>& ordered_keys);

struct ParsedQuestion {
  QueryType type = QueryType::kFactual;
  std::string attribute;              // empty for timeline questions
  std::vector<std::string> subjects;  // entities, or event keys for timeline
};

std::optional<ParsedQuestion> parse_question(std::string_view question);

}  // namespace synthweb::phrasing
