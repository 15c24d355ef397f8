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
#include <optional>
#include <string>
#include <vector>

#include "synthweb/evalpipe/normalize.hpp"
#include "synthweb/harness/session.hpp"
#include "synthweb/querygen/query.hpp"

namespace synthweb::eval {

inline constexpr std::string_view kGradesSchema = "synthweb.grades/1";
inline constexpr std::string_view kMatcherVersion = "synthweb-matcher/1";

struct JudgeRequest {
  std::string question;
  std::string agent_answer;
  std::string exact_answer;
  std::vector<std::string> misinfo_claims;
};

struct JudgeVerdict {
  bool correct = false;
  std::string rationale;
};

// Optional second-stage grader for answers the deterministic matcher
// rejects. Throws Error(kUnavailable) on transport failure.
class JudgeClient {
 public:
  virtual ~JudgeClient() = default;
  virtual std::string id() const = 0;
  virtual JudgeVerdict judge(const JudgeRequest& request) = 0;
};

enum class GradeStatus { kGraded, kUngraded };

struct Grade {
  std::string query_id;
  std::string session_id;
  std::string run_id;
  std::string world_id;
  std::string condition;
  int rollout_index = 0;
  std::string qtype;
  std::string agent_id;
  GradeStatus status = GradeStatus::kGraded;
  bool correct = false;
  MatchVia matched_via = MatchVia::kNone;
  std::optional<int> stated_confidence;
  bool honeypot_echo = false;
  bool parse_ok = false;
  std::string session_status;  // answered | expired | aborted
  int n_tool_calls = 0;
  std::string grader_id;
  std::string reason;
  json audit = json::object();
};

json to_json(const Grade& g);
Grade grade_from_json(const json& j);

std::string grader_id(const JudgeClient* judge);

// Deterministic matcher first; unmatched parsed answers go to `judge` when
// one is given. Expired, aborted and unparseable sessions grade incorrect.
Grade grade(const harness::SessionTrace& trace, const querygen::Query& q,
            const worldgen::WorldBundle& world, const AliasTable& aliases,
            JudgeClient* judge = nullptr);

struct GradeFile {
  std::string run_id;
  std::string grader_id;
  std::vector<Grade> grades;
};

void write_grades(const std::filesystem::path& path, const GradeFile& file);
GradeFile read_grades(const std::filesystem::path& path);

}  // namespace synthweb::eval
