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

#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "synthweb/jsonio.hpp"
#include "synthweb/querygen/query.hpp"
#include "synthweb/search/index.hpp"
#include "synthweb/worldgen/types.hpp"

namespace synthweb::harness {

using search::Condition;

inline constexpr std::string_view kTraceSchema = "synthweb.trace/1";
inline constexpr int kDefaultToolCap = 200;

// A loaded world plus everything sessions share read-only.
struct WorldContext {
  worldgen::WorldBundle world;
  search::SearchIndex index;
  querygen::QuerySet queries;

  static std::shared_ptr<const WorldContext> make(worldgen::WorldBundle world,
                                                  querygen::QuerySet queries);
};

enum class SessionState { kOpen, kAnswered, kExpired };
enum class ToolKind { kSearch, kRead };

std::string_view to_string(SessionState s);
SessionState session_state_from_string(std::string_view s);
std::string_view to_string(ToolKind k);
ToolKind tool_kind_from_string(std::string_view s);

struct ToolCall {
  int seq = 0;
  ToolKind kind = ToolKind::kSearch;
  std::string argument;  // query string or article id
  int k = 0;             // search only
  std::string result_digest;
  std::string timestamp;
  bool injected = false;
  std::string error;  // tool error code, empty on success
};

json to_json(const ToolCall& c);
ToolCall tool_call_from_json(const json& j);

struct AgentAnswer {
  std::string raw_text;
  std::string answer;
  std::optional<int> confidence;
  std::string explanation;
  bool parse_ok = false;
  std::string parse_error;
};

json to_json(const AgentAnswer& a);
AgentAnswer agent_answer_from_json(const json& j);

// Extracts "Answer:", "Confidence:" and "Explanation:" fields, case
// insensitive. Confidence accepts "85", "85%" and "85/100".
AgentAnswer parse_structured_response(std::string_view raw_text);
std::string format_structured_response(std::string_view answer, int confidence,
                                       std::string_view explanation);

struct ToolError {
  std::string code;  // "no_such_article", "invalid_argument", "expired", "closed"
  std::string message;
};

template <class T>
using ToolResult = std::variant<T, ToolError>;

struct ArticleView {
  std::string article_id;
  std::string title;
  std::string body;
  std::string domain;
  std::string timestamp;
};

json to_json(const search::SearchResult& r);
json to_json(const ArticleView& v);

// Digest of the payload a tool returned; identical results give identical
// digests.
std::string result_digest(const std::vector<search::SearchResult>& page);
std::string result_digest(const ArticleView& view);
std::string result_digest(const ToolError& error);

// The two tools an agent may call.
class ToolPort {
 public:
  virtual ~ToolPort() = default;
  virtual ToolResult<std::vector<search::SearchResult>> search(const std::string& query, int k) = 0;
  virtual ToolResult<ArticleView> read(const std::string& article_id) = 0;
};

struct SessionConfig {
  int tool_round_cap = kDefaultToolCap;
  int pin_rank = 0;
  double alpha = 0.5;
  // Seed mixed into honeypot generation alongside the pairing key.
  std::uint64_t seed = 0;
};

struct SessionTrace {
  std::string session_id;
  std::string run_id;
  std::string world_id;
  std::string query_id;
  Condition condition = Condition::kStandard;
  int rollout_index = 0;
  std::string agent_id;
  std::string prompt_hash;
  std::string honeypot_id;      // adversarial only
  std::string honeypot_answer;  // adversarial only
  std::vector<ToolCall> calls;
  std::vector<std::string> read_article_ids;
  bool honeypot_read = false;
  std::optional<AgentAnswer> final;
  SessionState state = SessionState::kOpen;
  std::string status = "open";  // open | answered | expired | aborted
  std::string status_reason;
  double wall_time_ms = 0.0;

  int n_tool_calls() const { return static_cast<int>(calls.size()); }
};

// JSONL form: header line, one line per tool call, final line.
std::vector<json> trace_lines(const SessionTrace& t);
SessionTrace trace_from_lines(const std::vector<json>& lines);

std::uint64_t honeypot_seed(std::uint64_t base, std::string_view world_id,
                            std::string_view query_id, int rollout_index);

// One (query, condition, rollout) episode. Not thread-safe: callers that
// share a session across threads guard it with call_mutex().
class Session final : public ToolPort {
 public:
  Session(std::shared_ptr<const WorldContext> ctx, const querygen::Query& query,
          Condition condition, int rollout_index, const SessionConfig& config,
          std::string session_id);

  ToolResult<std::vector<search::SearchResult>> search(const std::string& query, int k) override;
  ToolResult<ArticleView> read(const std::string& article_id) override;

  // Records the final answer; throws kConflict unless the session is open.
  const AgentAnswer& submit(std::string_view raw_text);
  void expire(std::string reason);
  void abort(std::string reason);

  SessionState state() const { return trace_.state; }
  const SessionTrace& trace() const { return trace_; }
  SessionTrace& mutable_trace() { return trace_; }
  const querygen::Query& query() const { return query_; }
  const search::SessionOverlay& overlay() const { return overlay_; }
  const std::string& id() const { return trace_.session_id; }

  std::mutex& call_mutex() { return mu_; }

 private:
  std::optional<ToolError> admit();
  void finish_call(ToolCall call);

  std::shared_ptr<const WorldContext> ctx_;
  querygen::Query query_;
  SessionConfig config_;
  search::SessionOverlay overlay_;
  SessionTrace trace_;
  std::chrono::steady_clock::time_point started_;
  std::mutex mu_;
};

}  // namespace synthweb::harness
