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

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "synthweb/jsonio.hpp"
#include "synthweb/phrasing.hpp"
#include "synthweb/rng.hpp"
#include "synthweb/text.hpp"
#include "synthweb/worldgen/generator.hpp"
#include "synthweb/worldgen/types.hpp"

namespace synthweb::querygen {

using phrasing::QueryType;

inline constexpr std::string_view kQueriesSchema = "synthweb.queries/1";

enum class Difficulty { kEasy, kMedium, kHard };

std::string_view to_string(Difficulty d);
Difficulty difficulty_from_string(std::string_view s);
Difficulty difficulty_for(QueryType t);

struct Evidence {
  std::string article_id;
  text::Span span;  // byte offsets into the article body
};

struct Query {
  std::string query_id;
  std::string world_id;
  std::string topic_id;
  QueryType qtype = QueryType::kFactual;
  std::string question;
  std::string exact_answer;
  std::vector<Evidence> evidence;
  std::vector<std::string> fact_ids;
  Difficulty difficulty = Difficulty::kEasy;
  bool contaminated = false;
};

json to_json(const Query& q);
Query query_from_json(const json& j);

struct QuerySet {
  std::string world_id;
  std::vector<Query> queries;
  // How the set was filtered: {"mode": "probe"|"none"|"unfiltered", "probe": id}.
  json filter = json{{"mode", "unfiltered"}};

  std::map<QueryType, int> type_counts() const;
  const Query* find(std::string_view query_id) const;
};

using TypeTargets = std::map<QueryType, int>;

// Per-world targets; four worlds give roughly the 147/160/154/126 mix.
TypeTargets default_type_targets();

struct GenerationLog {
  std::vector<std::string> skipped;  // one line per skipped query slot
};

QuerySet generate_queries(const worldgen::WorldBundle& world, Rng& rng,
                          const TypeTargets& targets, GenerationLog* log = nullptr);

// ------------------------------------------------------------ contamination

// Closed-book probe: sees only the question text, never the world.
class ProbeClient {
 public:
  virtual ~ProbeClient() = default;
  virtual std::string id() const = 0;
  // Throws Error(kUnavailable) when the probe cannot be reached.
  virtual std::string answer(const std::string& question) = 0;
};

// Deterministic probe that "knows" a fixed subset of answers. A question is
// known when a hash of (seed, question) falls under `hit_rate`; known
// questions are answered from the key, all others with "unknown".
class StubProbe final : public ProbeClient {
 public:
  StubProbe(std::map<std::string, std::string> answer_key, double hit_rate, std::uint64_t seed = 0);
  static StubProbe for_queries(const QuerySet& qs, double hit_rate, std::uint64_t seed = 0);

  std::string id() const override;
  std::string answer(const std::string& question) override;
  bool knows(const std::string& question) const;

 private:
  std::map<std::string, std::string> key_;
  double hit_rate_;
  std::uint64_t seed_;
};

struct ProbeRecord {
  std::string query_id;
  std::string question;
  std::string probe_answer;
  bool hit = false;
};

struct FilterResult {
  QuerySet kept;
  std::vector<Query> removed;  // contaminated = true
  std::vector<ProbeRecord> transcripts;
};

// A query is contaminated when the probe's answer matches its exact answer
// under the deterministic matcher.
FilterResult contamination_filter(const QuerySet& qs, ProbeClient& probe,
                                  const eval::AliasTable& aliases);

// Explicit opt-out: every query kept, contaminated=false, filter mode "none".
QuerySet skip_filter(const QuerySet& qs);

// --------------------------------------------------------------- validation

std::vector<worldgen::Finding> validate_query(const Query& q, const worldgen::WorldBundle& world);

// ------------------------------------------------------------------------ IO

void write_queries(const std::filesystem::path& path, const QuerySet& qs);
QuerySet read_queries(const std::filesystem::path& path);
void write_filter_audit(const std::filesystem::path& path, const FilterResult& r);

}  // namespace synthweb::querygen
