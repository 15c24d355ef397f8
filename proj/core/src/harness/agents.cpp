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

#include <algorithm>
#include <map>
#include <set>

#include "synthweb/digest.hpp"
#include "synthweb/error.hpp"
#include "synthweb/evalpipe/normalize.hpp"
#include "synthweb/harness/agent.hpp"
#include "synthweb/text.hpp"

namespace synthweb::harness {

namespace detail {
extern const std::string_view kAgentPromptV1;
}  // namespace detail

std::string_view agent_prompt_template() { return detail::kAgentPromptV1; }

std::string prompt_hash() { return digest128_hex(detail::kAgentPromptV1); }

std::string render_prompt(std::string_view question) {
  std::string out(detail::kAgentPromptV1);
  const auto pos = out.find("{question}");
  if (pos != std::string::npos) out.replace(pos, 10, question);
  return out;
}

std::string_view to_string(Policy p) {
  switch (p) {
    case Policy::kAnchored: return "anchored";
    case Policy::kCorroborating: return "corroborating";
    case Policy::kOracle: return "oracle";
    case Policy::kRandom: return "random";
  }
  return "anchored";
}

Policy policy_from_string(std::string_view s) {
  if (s == "anchored") return Policy::kAnchored;
  if (s == "corroborating") return Policy::kCorroborating;
  if (s == "oracle") return Policy::kOracle;
  if (s == "random") return Policy::kRandom;
  throw invalid_argument("unknown agent policy: " + std::string(s));
}

std::optional<std::string> answer_from_text(const phrasing::ParsedQuestion& q,
                                            std::string_view body) {
  using phrasing::QueryType;
  switch (q.type) {
    case QueryType::kFactual: {
      if (q.subjects.empty()) return std::nullopt;
      auto values = phrasing::find_quantity_values(body, q.attribute, q.subjects.front());
      if (values.empty()) return std::nullopt;
      return values.front();
    }
    case QueryType::kComparison:
    case QueryType::kEvaluation: {
      std::optional<double> best;
      std::string winner;
      for (const auto& s : q.subjects) {
        auto values = phrasing::find_quantity_values(body, q.attribute, s);
        if (values.empty()) return std::nullopt;
        auto n = phrasing::quantity_number(values.front());
        if (!n) return std::nullopt;
        if (!best || *n > *best) {
          best = n;
          winner = s;
        }
      }
      if (!best) return std::nullopt;
      return winner;
    }
    case QueryType::kTimeline: {
      std::vector<std::pair<Date, std::string>> dated;
      for (const auto& key : q.subjects) {
        auto dates = phrasing::find_event_dates(body, key);
        if (dates.empty()) return std::nullopt;
        dated.emplace_back(dates.front(), key);
      }
      if (dated.empty()) return std::nullopt;
      std::stable_sort(dated.begin(), dated.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      std::vector<std::string> keys;
      for (auto& [d, k] : dated) keys.push_back(k);
      return phrasing::timeline_answer(keys);
    }
  }
  return std::nullopt;
}

std::vector<std::string> answer_candidates(const querygen::Query& q,
                                           const worldgen::WorldBundle& world) {
  const auto parsed = phrasing::parse_question(q.question);
  if (!parsed) throw invalid_argument("cannot parse question " + q.query_id);
  std::vector<std::string> out;
  switch (q.qtype) {
    case phrasing::QueryType::kFactual: {
      const auto* cluster = world.find_cluster(q.topic_id);
      if (cluster == nullptr) throw not_found("topic " + q.topic_id);
      for (const auto& f : cluster->key_facts) {
        if (f.attribute == parsed->attribute && f.value) out.push_back(f.value->render());
      }
      break;
    }
    case phrasing::QueryType::kComparison:
    case phrasing::QueryType::kEvaluation:
      out = parsed->subjects;
      break;
    case phrasing::QueryType::kTimeline: {
      auto keys = parsed->subjects;
      std::sort(keys.begin(), keys.end());
      do {
        out.push_back(phrasing::timeline_answer(keys));
      } while (std::next_permutation(keys.begin(), keys.end()));
      break;
    }
  }
  if (out.empty()) out.push_back("unknown");
  return out;
}

namespace {

template <class T>
const T* ok(const ToolResult<T>& r) {
  return std::get_if<T>(&r);
}

// One search, read the top result, answer from it.
class AnchoredAgent final : public AgentClient {
 public:
  std::string id() const override { return "scripted:anchored"; }
  std::string run(ToolPort& tools, const AgentTask& task) override {
    const auto parsed = phrasing::parse_question(task.question);
    auto page = tools.search(task.question, 10);
    const auto* results = ok(page);
    if (results == nullptr || results->empty()) {
      return format_structured_response("unknown", 10, "The search returned nothing.");
    }
    auto view = tools.read(results->front().article_id);
    const auto* article = ok(view);
    std::optional<std::string> answer;
    if (article != nullptr && parsed) answer = answer_from_text(*parsed, article->body);
    if (!answer) {
      return format_structured_response("unknown", 20, "The top result did not say.");
    }
    return format_structured_response(*answer, 90,
                                      "Stated in the top result from " + results->front().domain + ".");
  }
};

// Reads results in rank order until two different domains state the same
// answer; widens the search once before falling back to a plurality vote.
class CorroboratingAgent final : public AgentClient {
 public:
  std::string id() const override { return "scripted:corroborating"; }
  std::string run(ToolPort& tools, const AgentTask& task) override {
    const auto parsed = phrasing::parse_question(task.question);
    if (!parsed) return format_structured_response("unknown", 5, "Could not interpret the question.");
    const auto aliases = eval::AliasTable::with_default_units();

    struct Vote {
      std::string surface;
      std::set<std::string> domains;
      int first_seen = 0;
    };
    std::map<std::string, Vote> votes;
    std::set<std::string> read;
    int order = 0;

    auto consume = [&](const std::vector<search::SearchResult>& page) -> std::optional<std::string> {
      for (const auto& r : page) {
        if (!read.insert(r.article_id).second) continue;
        auto view = tools.read(r.article_id);
        const auto* article = ok(view);
        if (article == nullptr) continue;
        auto answer = answer_from_text(*parsed, article->body);
        if (!answer) continue;
        const std::string key = eval::normalize_answer(*answer, aliases);
        auto& v = votes[key];
        if (v.surface.empty()) {
          v.surface = *answer;
          v.first_seen = order++;
        }
        v.domains.insert(article->domain);
        if (v.domains.size() >= 2) return v.surface;
      }
      return std::nullopt;
    };

    auto first = tools.search(task.question, 10);
    if (const auto* page = ok(first)) {
      if (auto a = consume(*page)) {
        return format_structured_response(*a, 80, "Two independent domains agree.");
      }
    }
    std::string wider = parsed->attribute;
    for (const auto& s : parsed->subjects) wider += " " + s;
    auto second = tools.search(text::trim(wider).empty() ? task.question : text::trim(wider), 20);
    if (const auto* page = ok(second)) {
      if (auto a = consume(*page)) {
        return format_structured_response(*a, 80, "Two independent domains agree.");
      }
    }
    const Vote* best = nullptr;
    for (const auto& [k, v] : votes) {
      if (best == nullptr || v.domains.size() > best->domains.size() ||
          (v.domains.size() == best->domains.size() && v.first_seen < best->first_seen)) {
        best = &v;
      }
    }
    if (best == nullptr) return format_structured_response("unknown", 10, "No source stated it.");
    return format_structured_response(best->surface, 50, "Only one source stated it.");
  }
};

// Reads the evidence articles and answers with the ground truth.
class OracleAgent final : public AgentClient {
 public:
  std::string id() const override { return "scripted:oracle"; }
  std::string run(ToolPort& tools, const AgentTask& task) override {
    if (task.query == nullptr) throw invalid_argument("the oracle agent needs the query");
    std::set<std::string> seen;
    for (const auto& e : task.query->evidence) {
      if (seen.insert(e.article_id).second) tools.read(e.article_id);
    }
    return format_structured_response(task.query->exact_answer, 99, "Read the evidence articles.");
  }
};

// Guesses uniformly among the candidate answers without using the tools.
class RandomAgent final : public AgentClient {
 public:
  std::string id() const override { return "scripted:random"; }
  std::string run(ToolPort&, const AgentTask& task) override {
    if (task.query == nullptr || task.world == nullptr) {
      throw invalid_argument("the random agent needs the query and world");
    }
    const auto candidates = answer_candidates(*task.query, *task.world);
    Rng rng(task.seed);
    const auto& pick = rng.pick(candidates);
    const int confidence =
        static_cast<int>(std::lround(100.0 / static_cast<double>(candidates.size())));
    return format_structured_response(pick, confidence, "A guess.");
  }
};

}  // namespace

std::unique_ptr<AgentClient> make_scripted_agent(Policy policy) {
  switch (policy) {
    case Policy::kAnchored: return std::make_unique<AnchoredAgent>();
    case Policy::kCorroborating: return std::make_unique<CorroboratingAgent>();
    case Policy::kOracle: return std::make_unique<OracleAgent>();
    case Policy::kRandom: return std::make_unique<RandomAgent>();
  }
  throw invalid_argument("unknown agent policy");
}

}  // namespace synthweb::harness
