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

#include <set>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "synthweb/evalpipe/normalize.hpp"
#include "synthweb/querygen/query.hpp"

namespace synthweb::querygen {
namespace {

const worldgen::WorldBundle& world() { return testing::small_context()->world; }
const QuerySet& queries() { return testing::small_context()->queries; }

TEST(QueryGenTest, MeetsTypeTargets) {
  const auto counts = queries().type_counts();
  for (auto t : phrasing::kAllQueryTypes) EXPECT_EQ(counts.at(t), 4) << phrasing::to_string(t);
  EXPECT_EQ(queries().world_id, world().world_id);
}

TEST(QueryGenTest, EveryQueryValidates) {
  std::set<std::string> ids, questions;
  for (const auto& q : queries().queries) {
    EXPECT_TRUE(ids.insert(q.query_id).second);
    EXPECT_TRUE(questions.insert(q.question).second) << q.question;
    EXPECT_EQ(q.difficulty, difficulty_for(q.qtype));
    for (const auto& f : validate_query(q, world())) {
      ADD_FAILURE() << q.query_id << ": " << f.code << " " << f.message;
    }
  }
}

TEST(QueryGenTest, EvidenceSpansStateTheAnswerParts) {
  for (const auto& q : queries().queries) {
    ASSERT_FALSE(q.evidence.empty()) << q.query_id;
    for (const auto& e : q.evidence) {
      const auto* a = world().find_article(e.article_id);
      ASSERT_NE(a, nullptr);
      ASSERT_LE(e.span.end, a->body.size());
      EXPECT_LT(e.span.begin, e.span.end);
    }
    if (q.qtype == phrasing::QueryType::kFactual) {
      bool stated = false;
      for (const auto& e : q.evidence) {
        const auto& body = world().find_article(e.article_id)->body;
        stated |= body.substr(e.span.begin, e.span.size()).find(q.exact_answer) != std::string::npos;
      }
      EXPECT_TRUE(stated) << q.query_id << " " << q.exact_answer;
    }
  }
}

TEST(QueryGenTest, TamperedQueryFailsValidation) {
  auto q = queries().queries.front();
  q.exact_answer = "not the answer";
  EXPECT_FALSE(validate_query(q, world()).empty());
  q = queries().queries.front();
  q.evidence.front().article_id = "0000000000000000";
  EXPECT_FALSE(validate_query(q, world()).empty());
}

TEST(QueryGenTest, Deterministic) {
  const auto again = testing::make_queries(world(), 11, 4);
  ASSERT_EQ(again.queries.size(), queries().queries.size());
  for (std::size_t i = 0; i < again.queries.size(); ++i) {
    EXPECT_EQ(to_json(again.queries[i]), to_json(queries().queries[i]));
  }
}

TEST(QueryGenTest, ImpossibleTargetsAreLoggedNotInvented) {
  Rng rng(1);
  GenerationLog log;
  const auto qs = generate_queries(world(), rng, {{phrasing::QueryType::kFactual, 100000}}, &log);
  EXPECT_LT(qs.queries.size(), 100000U);
  EXPECT_FALSE(log.skipped.empty());
}

// A probe that answers every question correctly.
class EchoProbe : public ProbeClient {
 public:
  explicit EchoProbe(const QuerySet& qs) {
    for (const auto& q : qs.queries) key_[q.question] = q.exact_answer;
  }
  std::string id() const override { return "echo"; }
  std::string answer(const std::string& q) override { return key_.at(q); }

 private:
  std::map<std::string, std::string> key_;
};

class DownProbe : public ProbeClient {
 public:
  std::string id() const override { return "down"; }
  std::string answer(const std::string&) override {
    throw Error(ErrorCode::kUnavailable, "connection refused");
  }
};

TEST(ContaminationTest, UnknownProbeKeepsEverything) {
  auto probe = StubProbe({}, 1.0);
  const auto r = contamination_filter(queries(), probe, world().aliases);
  EXPECT_EQ(r.kept.queries.size(), queries().queries.size());
  EXPECT_TRUE(r.removed.empty());
  EXPECT_EQ(r.kept.filter.at("mode"), "probe");
}

TEST(ContaminationTest, EchoProbeRemovesEverything) {
  EchoProbe probe(queries());
  const auto r = contamination_filter(queries(), probe, world().aliases);
  EXPECT_TRUE(r.kept.queries.empty());
  ASSERT_EQ(r.removed.size(), queries().queries.size());
  for (const auto& q : r.removed) EXPECT_TRUE(q.contaminated);
  EXPECT_EQ(r.transcripts.size(), queries().queries.size());
}

TEST(ContaminationTest, StubHitRateMatchesItsAnswerKey) {
  // 100 synthetic questions; the expected survivors are counted from the
  // stub's own knows() rather than assumed.
  QuerySet qs;
  qs.world_id = "w";
  for (int i = 0; i < 100; ++i) {
    Query q;
    q.query_id = "q" + std::to_string(i);
    q.question = "What was the output of Plant " + std::to_string(i) + "?";
    q.exact_answer = std::to_string(1000 + i) + " megawatts";
    qs.queries.push_back(q);
  }
  auto probe = StubProbe::for_queries(qs, 0.2, 7);
  int expected_survivors = 0;
  for (const auto& q : qs.queries) expected_survivors += probe.knows(q.question) ? 0 : 1;
  const auto r = contamination_filter(qs, probe, eval::AliasTable::with_default_units());
  EXPECT_EQ(static_cast<int>(r.kept.queries.size()), expected_survivors);
  EXPECT_NEAR(expected_survivors, 80, 12);

  // Re-probing the survivors finds nothing.
  const auto again = contamination_filter(r.kept, probe, eval::AliasTable::with_default_units());
  EXPECT_TRUE(again.removed.empty());
}

TEST(ContaminationTest, UnavailableProbeIsAnError) {
  DownProbe probe;
  try {
    contamination_filter(queries(), probe, world().aliases);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnavailable);
  }
}

TEST(ContaminationTest, ExplicitOptOut) {
  const auto qs = skip_filter(queries());
  EXPECT_EQ(qs.filter.at("mode"), "none");
  EXPECT_EQ(qs.queries.size(), queries().queries.size());
}

TEST(QueryIoTest, RoundTrip) {
  testing::TempDir dir("queries");
  write_queries(dir.path() / "q.jsonl", queries());
  const auto back = read_queries(dir.path() / "q.jsonl");
  EXPECT_EQ(back.world_id, queries().world_id);
  ASSERT_EQ(back.queries.size(), queries().queries.size());
  for (std::size_t i = 0; i < back.queries.size(); ++i) {
    EXPECT_EQ(to_json(back.queries[i]), to_json(queries().queries[i]));
  }
}

}  // namespace
}  // namespace synthweb::querygen
