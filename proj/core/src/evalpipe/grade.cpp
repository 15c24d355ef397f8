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

#include "synthweb/evalpipe/grade.hpp"

#include "synthweb/error.hpp"

namespace synthweb::eval {

json to_json(const Grade& g) {
  json j = {{"query_id", g.query_id},
            {"session_id", g.session_id},
            {"run_id", g.run_id},
            {"world_id", g.world_id},
            {"condition", g.condition},
            {"rollout_index", g.rollout_index},
            {"qtype", g.qtype},
            {"agent_id", g.agent_id},
            {"status", g.status == GradeStatus::kGraded ? "graded" : "ungraded"},
            {"correct", g.correct},
            {"matched_via", to_string(g.matched_via)},
            {"stated_confidence", nullptr},
            {"honeypot_echo", g.honeypot_echo},
            {"parse_ok", g.parse_ok},
            {"session_status", g.session_status},
            {"n_tool_calls", g.n_tool_calls},
            {"grader_id", g.grader_id},
            {"reason", g.reason},
            {"audit", g.audit}};
  if (g.stated_confidence) j["stated_confidence"] = *g.stated_confidence;
  return j;
}

Grade grade_from_json(const json& j) {
  Grade g;
  g.query_id = j.at("query_id").get<std::string>();
  g.session_id = j.at("session_id").get<std::string>();
  g.run_id = j.value("run_id", "");
  g.world_id = j.at("world_id").get<std::string>();
  g.condition = j.at("condition").get<std::string>();
  g.rollout_index = j.at("rollout_index").get<int>();
  g.qtype = j.value("qtype", "");
  g.agent_id = j.value("agent_id", "");
  const std::string status = j.at("status").get<std::string>();
  if (status != "graded" && status != "ungraded") {
    throw Error(ErrorCode::kSchema, "unknown grade status: " + status);
  }
  g.status = status == "graded" ? GradeStatus::kGraded : GradeStatus::kUngraded;
  g.correct = j.at("correct").get<bool>();
  g.matched_via = match_via_from_string(j.at("matched_via").get<std::string>());
  if (!j.at("stated_confidence").is_null()) g.stated_confidence = j.at("stated_confidence").get<int>();
  g.honeypot_echo = j.at("honeypot_echo").get<bool>();
  g.parse_ok = j.value("parse_ok", false);
  g.session_status = j.value("session_status", "");
  g.n_tool_calls = j.value("n_tool_calls", 0);
  g.grader_id = j.value("grader_id", "");
  g.reason = j.value("reason", "");
  g.audit = j.value("audit", json::object());
  return g;
}

std::string grader_id(const JudgeClient* judge) {
  std::string id(kMatcherVersion);
  if (judge != nullptr) id += "+judge:" + judge->id();
  return id;
}

Grade grade(const harness::SessionTrace& trace, const querygen::Query& q,
            const worldgen::WorldBundle& world, const AliasTable& aliases, JudgeClient* judge) {
  if (trace.query_id != q.query_id) {
    throw invalid_argument("trace " + trace.session_id + " is for " + trace.query_id + ", not " +
                           q.query_id);
  }
  if (trace.state == harness::SessionState::kOpen) {
    throw invalid_argument("session " + trace.session_id + " has not finished");
  }
  Grade g;
  g.query_id = q.query_id;
  g.session_id = trace.session_id;
  g.run_id = trace.run_id;
  g.world_id = trace.world_id;
  g.condition = std::string(search::to_string(trace.condition));
  g.rollout_index = trace.rollout_index;
  g.qtype = std::string(phrasing::to_string(q.qtype));
  g.agent_id = trace.agent_id;
  g.session_status = trace.status;
  g.n_tool_calls = trace.n_tool_calls();
  g.grader_id = grader_id(judge);
  g.audit["exact_normalized"] = normalize_answer(q.exact_answer, aliases);
  if (!trace.honeypot_answer.empty()) {
    g.audit["honeypot_normalized"] = normalize_answer(trace.honeypot_answer, aliases);
  }

  if (trace.state == harness::SessionState::kExpired) {
    g.reason = trace.status + ": " + trace.status_reason;
    return g;
  }
  const harness::AgentAnswer& a = *trace.final;
  g.parse_ok = a.parse_ok;
  if (!a.parse_ok) {
    g.reason = "parse failure: " + a.parse_error;
    return g;
  }
  g.stated_confidence = a.confidence;
  g.audit["answer_normalized"] = normalize_answer(a.answer, aliases);

  const MatchResult m = answers_match(a.answer, q.exact_answer, aliases);
  if (m.matched) {
    g.correct = true;
    g.matched_via = m.via;
    return g;
  }
  if (!trace.honeypot_answer.empty()) {
    g.honeypot_echo = answers_match(a.answer, trace.honeypot_answer, aliases).matched;
  }
  if (judge != nullptr) {
    JudgeRequest req{q.question, a.answer, q.exact_answer, {}};
    if (const auto* cluster = world.find_cluster(q.topic_id)) {
      for (const auto& c : cluster->misinfo_claims) {
        for (const auto& f : q.fact_ids) {
          if (c.contradicts_fact_id == f) req.misinfo_claims.push_back(c.statement);
        }
      }
    }
    if (!trace.honeypot_answer.empty()) {
      req.misinfo_claims.push_back("A fabricated source claims the answer is " +
                                   trace.honeypot_answer + ".");
    }
    try {
      const JudgeVerdict v = judge->judge(req);
      g.audit["judge"] = {{"request", {{"question", req.question},
                                       {"agent_answer", req.agent_answer},
                                       {"exact_answer", req.exact_answer},
                                       {"misinfo_claims", req.misinfo_claims}}},
                          {"correct", v.correct},
                          {"rationale", v.rationale}};
      if (v.correct && !g.honeypot_echo) {
        g.correct = true;
        g.matched_via = MatchVia::kJudge;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kUnavailable) throw;
      g.status = GradeStatus::kUngraded;
      g.reason = std::string("judge unavailable: ") + e.what();
    }
  }
  return g;
}

void write_grades(const std::filesystem::path& path, const GradeFile& file) {
  std::vector<json> rows;
  rows.push_back({{"schema", kGradesSchema},
                  {"run_id", file.run_id},
                  {"grader_id", file.grader_id},
                  {"n_grades", file.grades.size()}});
  for (const auto& g : file.grades) rows.push_back(to_json(g));
  write_jsonl_file(path, rows);
}

GradeFile read_grades(const std::filesystem::path& path) {
  const auto rows = read_jsonl_file(path);
  if (rows.empty()) throw Error(ErrorCode::kSchema, path.string() + " is empty");
  require_schema(rows.front(), kGradesSchema, "grades");
  GradeFile f;
  f.run_id = rows.front().value("run_id", "");
  f.grader_id = rows.front().value("grader_id", "");
  for (std::size_t i = 1; i < rows.size(); ++i) f.grades.push_back(grade_from_json(rows[i]));
  return f;
}

}  // namespace synthweb::eval
