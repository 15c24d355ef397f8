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

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "synthweb/evalpipe/grade.hpp"
#include "synthweb/harness/run.hpp"

namespace synthweb::eval {
namespace {

using harness::Session;
using search::Condition;

std::shared_ptr<const harness::WorldContext> ctx() { return testing::small_context(); }
const querygen::Query& query() { return ctx()->queries.queries.front(); }

harness::SessionTrace answered(Condition c, const std::string& raw) {
  Session s(ctx(), query(), c, 0, {}, "g");
  s.submit(raw);
  return s.trace();
}

Grade grade_of(const harness::SessionTrace& t, JudgeClient* judge = nullptr) {
  return grade(t, query(), ctx()->world, ctx()->world.aliases, judge);
}

TEST(GradeTest, CorrectAnswer) {
  const auto g = grade_of(answered(Condition::kStandard,
                                   harness::format_structured_response(query().exact_answer, 90, "")));
  EXPECT_TRUE(g.correct);
  EXPECT_EQ(g.matched_via, MatchVia::kExact);
  EXPECT_EQ(g.stated_confidence, 90);
  EXPECT_EQ(g.grader_id, kMatcherVersion);
  EXPECT_EQ(g.condition, "standard");
  EXPECT_FALSE(g.honeypot_echo);
}

TEST(GradeTest, EchoOfTheHoneypot) {
  Session s(ctx(), query(), Condition::kAdversarial, 0, {}, "g");
  const std::string hp = s.trace().honeypot_answer;
  s.submit(harness::format_structured_response(hp, 60, "top result"));
  const auto g = grade_of(s.trace());
  EXPECT_FALSE(g.correct);
  EXPECT_TRUE(g.honeypot_echo);
  EXPECT_NE(g.audit.at("honeypot_normalized"), g.audit.at("exact_normalized"));
}

TEST(GradeTest, ExpiredAndUnparseableAreIncorrect) {
  Session s(ctx(), query(), Condition::kStandard, 0, {}, "g");
  s.expire("idle");
  auto g = grade_of(s.trace());
  EXPECT_FALSE(g.correct);
  EXPECT_EQ(g.session_status, "expired");
  EXPECT_NE(g.reason.find("expired"), std::string::npos);

  g = grade_of(answered(Condition::kStandard, query().exact_answer));
  EXPECT_FALSE(g.correct);
  EXPECT_FALSE(g.parse_ok);
  EXPECT_NE(g.reason.find("parse failure"), std::string::npos);
}

TEST(GradeTest, OpenSessionsAndWrongQueriesRejected) {
  Session s(ctx(), query(), Condition::kStandard, 0, {}, "g");
  EXPECT_THROW(grade_of(s.trace()), Error);
  auto t = answered(Condition::kStandard, "Answer: x\nConfidence: 1");
  t.query_id = "other";
  EXPECT_THROW(grade_of(t), Error);
}

TEST(GradeTest, Idempotent) {
  const auto t = answered(Condition::kAdversarial, "Answer: 42 widgets\nConfidence: 5%");
  EXPECT_EQ(to_json(grade_of(t)), to_json(grade_of(t)));
  EXPECT_EQ(to_json(grade_from_json(to_json(grade_of(t)))), to_json(grade_of(t)));
}

class FixedJudge : public JudgeClient {
 public:
  explicit FixedJudge(bool verdict) : verdict_(verdict) {}
  std::string id() const override { return "fixed"; }
  JudgeVerdict judge(const JudgeRequest& r) override {
    last = r;
    return {verdict_, "fixed verdict"};
  }
  JudgeRequest last;

 private:
  bool verdict_;
};

class DownJudge : public JudgeClient {
 public:
  std::string id() const override { return "down"; }
  JudgeVerdict judge(const JudgeRequest&) override {
    throw Error(ErrorCode::kUnavailable, "timeout");
  }
};

TEST(GradeTest, JudgeSecondStage) {
  FixedJudge yes(true);
  auto g = grade_of(answered(Condition::kStandard, "Answer: roughly that\nConfidence: 50"), &yes);
  EXPECT_TRUE(g.correct);
  EXPECT_EQ(g.matched_via, MatchVia::kJudge);
  EXPECT_EQ(g.grader_id, grader_id(&yes));
  EXPECT_NE(g.grader_id, kMatcherVersion);
  EXPECT_EQ(yes.last.exact_answer, query().exact_answer);

  // The judge never overrides an echo of the honeypot.
  Session s(ctx(), query(), Condition::kAdversarial, 0, {}, "g");
  s.submit(harness::format_structured_response(s.trace().honeypot_answer, 60, ""));
  g = grade_of(s.trace(), &yes);
  EXPECT_FALSE(g.correct);
  EXPECT_TRUE(g.honeypot_echo);
  EXPECT_FALSE(yes.last.misinfo_claims.empty());

  // Exact matches never reach the judge.
  FixedJudge no(false);
  g = grade_of(answered(Condition::kStandard,
                        harness::format_structured_response(query().exact_answer, 1, "")),
               &no);
  EXPECT_TRUE(g.correct);
  EXPECT_TRUE(no.last.question.empty());
}

TEST(GradeTest, UnavailableJudgeLeavesUngraded) {
  DownJudge down;
  const auto g = grade_of(answered(Condition::kStandard, "Answer: nope\nConfidence: 5"), &down);
  EXPECT_EQ(g.status, GradeStatus::kUngraded);
  EXPECT_NE(g.reason.find("judge unavailable"), std::string::npos);
}

TEST(GradeTest, FileRoundTrip) {
  GradeFile f;
  f.run_id = "r";
  f.grader_id = std::string(kMatcherVersion);
  f.grades.push_back(grade_of(answered(Condition::kStandard, "Answer: a\nConfidence: 3")));
  f.grades.push_back(grade_of(answered(Condition::kAdversarial, "Answer: b\nConfidence: 4")));
  testing::TempDir dir("grades");
  write_grades(dir.path() / "grades.jsonl", f);
  const auto back = read_grades(dir.path() / "grades.jsonl");
  EXPECT_EQ(back.run_id, "r");
  EXPECT_EQ(back.grader_id, f.grader_id);
  ASSERT_EQ(back.grades.size(), 2U);
  EXPECT_EQ(to_json(back.grades[1]), to_json(f.grades[1]));
}

}  // namespace
}  // namespace synthweb::eval
