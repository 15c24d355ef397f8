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

#include "synthweb/harness/session.hpp"

#include <algorithm>
#include <regex>

#include "synthweb/dates.hpp"
#include "synthweb/digest.hpp"
#include "synthweb/error.hpp"
#include "synthweb/rng.hpp"
#include "synthweb/text.hpp"

namespace synthweb::harness {

std::shared_ptr<const WorldContext> WorldContext::make(worldgen::WorldBundle world,
                                                       querygen::QuerySet queries) {
  if (!queries.world_id.empty() && queries.world_id != world.world_id) {
    throw invalid_argument("query set belongs to world " + queries.world_id + ", not " +
                           world.world_id);
  }
  auto ctx = std::make_shared<WorldContext>();
  ctx->index = search::SearchIndex::build(world);
  ctx->world = std::move(world);
  ctx->world.reindex();
  ctx->queries = std::move(queries);
  return ctx;
}

std::string_view to_string(SessionState s) {
  switch (s) {
    case SessionState::kOpen: return "open";
    case SessionState::kAnswered: return "answered";
    case SessionState::kExpired: return "expired";
  }
  return "open";
}

SessionState session_state_from_string(std::string_view s) {
  if (s == "open") return SessionState::kOpen;
  if (s == "answered") return SessionState::kAnswered;
  if (s == "expired") return SessionState::kExpired;
  throw invalid_argument("unknown session state: " + std::string(s));
}

std::string_view to_string(ToolKind k) { return k == ToolKind::kRead ? "read" : "search"; }

ToolKind tool_kind_from_string(std::string_view s) {
  if (s == "search") return ToolKind::kSearch;
  if (s == "read") return ToolKind::kRead;
  throw invalid_argument("unknown tool: " + std::string(s));
}

json to_json(const ToolCall& c) {
  json j = {{"kind", "tool_call"},  {"seq", c.seq},
            {"tool", to_string(c.kind)}, {"argument", c.argument},
            {"result_digest", c.result_digest}, {"timestamp", c.timestamp},
            {"injected", c.injected}};
  if (c.kind == ToolKind::kSearch) j["k"] = c.k;
  if (!c.error.empty()) j["error"] = c.error;
  return j;
}

ToolCall tool_call_from_json(const json& j) {
  ToolCall c;
  c.seq = j.at("seq").get<int>();
  c.kind = tool_kind_from_string(j.at("tool").get<std::string>());
  c.argument = j.at("argument").get<std::string>();
  c.k = j.value("k", 0);
  c.result_digest = j.at("result_digest").get<std::string>();
  c.timestamp = j.value("timestamp", "");
  c.injected = j.value("injected", false);
  c.error = j.value("error", "");
  return c;
}

json to_json(const AgentAnswer& a) {
  json j = {{"raw_text", a.raw_text},   {"answer", a.answer},
            {"explanation", a.explanation}, {"parse_ok", a.parse_ok},
            {"confidence", nullptr}};
  if (a.confidence) j["confidence"] = *a.confidence;
  if (!a.parse_error.empty()) j["parse_error"] = a.parse_error;
  return j;
}

AgentAnswer agent_answer_from_json(const json& j) {
  AgentAnswer a;
  a.raw_text = j.value("raw_text", "");
  a.answer = j.value("answer", "");
  a.explanation = j.value("explanation", "");
  a.parse_ok = j.value("parse_ok", false);
  a.parse_error = j.value("parse_error", "");
  if (j.contains("confidence") && !j.at("confidence").is_null()) {
    a.confidence = j.at("confidence").get<int>();
  }
  return a;
}

// --------------------------------------------------------------- parsing

namespace {

enum class Field { kNone, kAnswer, kConfidence, kExplanation };

// Recognizes "Answer:", "**Confidence**:", "- explanation -" style labels.
Field label_of(const std::string& line, std::string& rest) {
  static const std::regex re(R"(^\s*[-*#>\s]*(answer|confidence|explanation)\s*\**\s*[:=-]\s*\**\s*(.*)$)",
                             std::regex::icase);
  std::smatch m;
  if (!std::regex_match(line, m, re)) return Field::kNone;
  rest = m[2].str();
  const std::string name = text::to_lower(m[1].str());
  if (name == "answer") return Field::kAnswer;
  if (name == "confidence") return Field::kConfidence;
  return Field::kExplanation;
}

}  // namespace

AgentAnswer parse_structured_response(std::string_view raw_text) {
  AgentAnswer out;
  out.raw_text = std::string(raw_text);
  std::optional<std::string> answer, confidence, explanation;
  Field current = Field::kNone;
  std::size_t start = 0;
  const std::string raw(raw_text);
  while (start <= raw.size()) {
    auto end = raw.find('\n', start);
    if (end == std::string::npos) end = raw.size();
    std::string line = raw.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    start = end + 1;
    std::string rest;
    const Field f = label_of(line, rest);
    if (f != Field::kNone) {
      current = f;
      auto& slot = f == Field::kAnswer ? answer : f == Field::kConfidence ? confidence : explanation;
      if (!slot) slot = rest;
      else current = Field::kNone;  // a repeated label; keep the first
      continue;
    }
    if (current == Field::kExplanation) *explanation += "\n" + line;
    if (current == Field::kAnswer && answer->empty()) *answer = line;
  }
  if (answer) out.answer = text::trim(*answer);
  if (explanation) out.explanation = text::trim(*explanation);
  if (!answer || out.answer.empty()) {
    out.parse_error = "missing answer";
    return out;
  }
  if (!confidence) {
    out.parse_error = "missing confidence";
    return out;
  }
  static const std::regex conf_re(R"(^\s*(\d{1,4})\s*(%|/\s*100)?\s*\.?\s*$)");
  std::smatch m;
  const std::string c = *confidence;
  if (!std::regex_match(c, m, conf_re)) {
    out.parse_error = "unparseable confidence";
    return out;
  }
  const int value = std::stoi(m[1].str());
  if (value < 0 || value > 100) {
    out.parse_error = "confidence out of range";
    return out;
  }
  out.confidence = value;
  out.parse_ok = true;
  return out;
}

std::string format_structured_response(std::string_view answer, int confidence,
                                       std::string_view explanation) {
  return "Answer: " + std::string(answer) + "\nConfidence: " + std::to_string(confidence) +
         "%\nExplanation: " + std::string(explanation);
}

// --------------------------------------------------------------- payloads

json to_json(const search::SearchResult& r) {
  return {{"rank", r.rank},     {"article_id", r.article_id}, {"title", r.title},
          {"snippet", r.snippet}, {"domain", r.domain},         {"score", r.score},
          {"pinned", r.pinned}};
}

json to_json(const ArticleView& v) {
  return {{"article_id", v.article_id}, {"title", v.title},
          {"body", v.body},             {"domain", v.domain},
          {"timestamp", v.timestamp}};
}

namespace {

// Scores are excluded: they are not shown to agents and floating point
// formatting would make digests fragile across platforms.
json page_payload(const std::vector<search::SearchResult>& page) {
  json arr = json::array();
  for (const auto& r : page) {
    arr.push_back({{"rank", r.rank}, {"article_id", r.article_id}, {"title", r.title},
                   {"snippet", r.snippet}, {"domain", r.domain}, {"pinned", r.pinned}});
  }
  return arr;
}

}  // namespace

std::string result_digest(const std::vector<search::SearchResult>& page) {
  return digest128_hex(page_payload(page).dump());
}

std::string result_digest(const ArticleView& view) { return digest128_hex(to_json(view).dump()); }

std::string result_digest(const ToolError& error) {
  return digest128_hex(json{{"error", error.code}, {"message", error.message}}.dump());
}

// ------------------------------------------------------------------ traces

std::vector<json> trace_lines(const SessionTrace& t) {
  std::vector<json> lines;
  lines.push_back({{"schema", kTraceSchema},
                   {"kind", "header"},
                   {"session_id", t.session_id},
                   {"run_id", t.run_id},
                   {"world_id", t.world_id},
                   {"query_id", t.query_id},
                   {"condition", search::to_string(t.condition)},
                   {"rollout_index", t.rollout_index},
                   {"agent_id", t.agent_id},
                   {"prompt_hash", t.prompt_hash},
                   {"honeypot_id", t.honeypot_id},
                   {"honeypot_answer", t.honeypot_answer}});
  for (const auto& c : t.calls) lines.push_back(to_json(c));
  json fin = {{"kind", "final"},
              {"state", to_string(t.state)},
              {"status", t.status},
              {"status_reason", t.status_reason},
              {"read_article_ids", t.read_article_ids},
              {"honeypot_read", t.honeypot_read},
              {"n_tool_calls", t.n_tool_calls()},
              {"wall_time_ms", t.wall_time_ms},
              {"answer", nullptr}};
  if (t.final) fin["answer"] = to_json(*t.final);
  lines.push_back(std::move(fin));
  return lines;
}

SessionTrace trace_from_lines(const std::vector<json>& lines) {
  if (lines.empty()) throw Error(ErrorCode::kSchema, "empty trace");
  const json& h = lines.front();
  require_schema(h, kTraceSchema, "trace");
  SessionTrace t;
  t.session_id = h.at("session_id").get<std::string>();
  t.run_id = h.value("run_id", "");
  t.world_id = h.at("world_id").get<std::string>();
  t.query_id = h.at("query_id").get<std::string>();
  t.condition = search::condition_from_string(h.at("condition").get<std::string>());
  t.rollout_index = h.at("rollout_index").get<int>();
  t.agent_id = h.value("agent_id", "");
  t.prompt_hash = h.value("prompt_hash", "");
  t.honeypot_id = h.value("honeypot_id", "");
  t.honeypot_answer = h.value("honeypot_answer", "");
  bool have_final = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const json& j = lines[i];
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "tool_call") {
      if (have_final) throw Error(ErrorCode::kSchema, "tool call after the final record");
      t.calls.push_back(tool_call_from_json(j));
    } else if (kind == "final") {
      have_final = true;
      t.state = session_state_from_string(j.at("state").get<std::string>());
      t.status = j.at("status").get<std::string>();
      t.status_reason = j.value("status_reason", "");
      t.read_article_ids = j.at("read_article_ids").get<std::vector<std::string>>();
      t.honeypot_read = j.at("honeypot_read").get<bool>();
      t.wall_time_ms = j.value("wall_time_ms", 0.0);
      if (!j.at("answer").is_null()) t.final = agent_answer_from_json(j.at("answer"));
    } else {
      throw Error(ErrorCode::kSchema, "unknown trace record kind: " + kind);
    }
  }
  if (!have_final) throw Error(ErrorCode::kSchema, "trace has no final record");
  for (std::size_t i = 0; i < t.calls.size(); ++i) {
    if (t.calls[i].seq != static_cast<int>(i) + 1) {
      throw Error(ErrorCode::kSchema, "trace tool calls out of sequence");
    }
  }
  return t;
}

// ----------------------------------------------------------------- session

std::uint64_t honeypot_seed(std::uint64_t base, std::string_view world_id,
                            std::string_view query_id, int rollout_index) {
  return derive_seed(base, "honeypot/" + std::string(world_id) + "/" + std::string(query_id) +
                               "/" + std::to_string(rollout_index));
}

Session::Session(std::shared_ptr<const WorldContext> ctx, const querygen::Query& query,
                 Condition condition, int rollout_index, const SessionConfig& config,
                 std::string session_id)
    : ctx_(std::move(ctx)), query_(query), config_(config), started_(std::chrono::steady_clock::now()) {
  if (!ctx_) throw invalid_argument("session needs a world");
  if (query_.world_id != ctx_->world.world_id) {
    throw invalid_argument("query " + query_.query_id + " does not belong to world " +
                           ctx_->world.world_id);
  }
  if (config_.tool_round_cap < 1) throw invalid_argument("tool round cap must be >= 1");
  if (rollout_index < 0) throw invalid_argument("rollout index must be >= 0");
  overlay_.session_id = session_id;
  overlay_.condition = condition;
  overlay_.pin_rank = config_.pin_rank;
  trace_.session_id = std::move(session_id);
  trace_.world_id = ctx_->world.world_id;
  trace_.query_id = query_.query_id;
  trace_.condition = condition;
  trace_.rollout_index = rollout_index;
  if (condition == Condition::kAdversarial) {
    Rng rng(honeypot_seed(config_.seed, trace_.world_id, trace_.query_id, rollout_index));
    overlay_.honeypot = search::make_honeypot(query_, ctx_->world, rng);
    trace_.honeypot_id = overlay_.honeypot->article.article_id;
    trace_.honeypot_answer = overlay_.honeypot->honeypot_answer;
  }
}

std::optional<ToolError> Session::admit() {
  if (trace_.state == SessionState::kExpired) {
    return ToolError{"expired", "session expired: " + trace_.status_reason};
  }
  if (trace_.state != SessionState::kOpen) {
    return ToolError{"closed", "session already answered"};
  }
  if (trace_.n_tool_calls() >= config_.tool_round_cap) {
    expire("tool round cap of " + std::to_string(config_.tool_round_cap) + " reached");
    return ToolError{"expired", "session expired: " + trace_.status_reason};
  }
  return std::nullopt;
}

void Session::finish_call(ToolCall call) {
  call.seq = trace_.n_tool_calls() + 1;
  call.timestamp = utc_now_iso();
  trace_.calls.push_back(std::move(call));
}

ToolResult<std::vector<search::SearchResult>> Session::search(const std::string& query, int k) {
  if (auto err = admit()) return *err;
  ToolCall call;
  call.kind = ToolKind::kSearch;
  call.argument = query;
  call.k = k;
  if (text::trim(query).empty() || k < 1) {
    ToolError err{"invalid_argument", k < 1 ? "k must be >= 1" : "search query must not be empty"};
    call.error = err.code;
    call.result_digest = result_digest(err);
    finish_call(std::move(call));
    return err;
  }
  const bool was_served = overlay_.first_query_served;
  auto page = search::search(ctx_->index, overlay_, query, {k, config_.alpha});
  call.injected = !was_served && overlay_.first_query_served;
  call.result_digest = result_digest(page);
  finish_call(std::move(call));
  return page;
}

ToolResult<ArticleView> Session::read(const std::string& article_id) {
  if (auto err = admit()) return *err;
  ToolCall call;
  call.kind = ToolKind::kRead;
  call.argument = article_id;
  ArticleView view;
  bool found = false;
  if (const auto* a = ctx_->world.find_article(article_id)) {
    view = {a->article_id, a->title, a->body, ctx_->world.domain_of(*a),
            format_datetime(a->timestamp)};
    found = true;
  } else if (overlay_.honeypot && overlay_.honeypot->article.article_id == article_id) {
    const auto& h = *overlay_.honeypot;
    view = {h.article.article_id, h.article.title, h.article.body, h.domain,
            format_datetime(h.article.timestamp)};
    found = true;
    trace_.honeypot_read = true;
  }
  if (!found) {
    ToolError err{"no_such_article", "no such article"};
    call.error = err.code;
    call.result_digest = result_digest(err);
    finish_call(std::move(call));
    return err;
  }
  if (std::find(trace_.read_article_ids.begin(), trace_.read_article_ids.end(), article_id) ==
      trace_.read_article_ids.end()) {
    trace_.read_article_ids.push_back(article_id);
  }
  call.result_digest = result_digest(view);
  finish_call(std::move(call));
  return view;
}

const AgentAnswer& Session::submit(std::string_view raw_text) {
  if (trace_.state != SessionState::kOpen) {
    throw Error(ErrorCode::kConflict, "session " + trace_.session_id + " is " +
                                          std::string(to_string(trace_.state)));
  }
  trace_.final = parse_structured_response(raw_text);
  trace_.state = SessionState::kAnswered;
  trace_.status = "answered";
  trace_.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started_).count();
  return *trace_.final;
}

void Session::expire(std::string reason) {
  if (trace_.state != SessionState::kOpen) return;
  trace_.state = SessionState::kExpired;
  trace_.status = "expired";
  trace_.status_reason = std::move(reason);
  trace_.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started_).count();
}

void Session::abort(std::string reason) {
  if (trace_.state != SessionState::kOpen) return;
  expire(std::move(reason));
  trace_.status = "aborted";
}

}  // namespace synthweb::harness
