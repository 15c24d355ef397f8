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

#include <cmath>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "synthweb/evalpipe/normalize.hpp"
#include "synthweb/search/index.hpp"
#include "synthweb/text.hpp"

namespace synthweb::search {
namespace {

const harness::WorldContext& ctx() { return *testing::small_context(); }

// Okapi BM25 recomputed from raw article text.
class BruteBm25 {
 public:
  explicit BruteBm25(const worldgen::WorldBundle& w) {
    for (const auto& a : w.articles) {
      docs_.push_back(text::tokenize(a.title + "\n" + a.body));
      total_ += docs_.back().size();
      std::set<std::string> uniq(docs_.back().begin(), docs_.back().end());
      for (const auto& t : uniq) ++df_[t];
      ids_.push_back(a.article_id);
    }
  }
  double score(const std::vector<std::string>& terms, std::size_t d) const {
    const double n = static_cast<double>(docs_.size());
    const double avgdl = static_cast<double>(total_) / n;
    double s = 0;
    for (const auto& t : terms) {
      auto it = df_.find(t);
      if (it == df_.end()) continue;
      double tf = 0;
      for (const auto& x : docs_[d]) tf += x == t ? 1 : 0;
      const double idf = std::log(1 + (n - it->second + 0.5) / (it->second + 0.5));
      const double dl = static_cast<double>(docs_[d].size());
      s += idf * tf * 2.2 / (tf + 1.2 * (1 - 0.75 + 0.75 * dl / avgdl));
    }
    return s;
  }
  const std::string& id(std::size_t d) const { return ids_[d]; }
  std::size_t size() const { return docs_.size(); }

 private:
  std::vector<std::vector<std::string>> docs_;
  std::map<std::string, int> df_;
  std::vector<std::string> ids_;
  std::size_t total_ = 0;
};

TEST(Bm25Test, MatchesBruteForce) {
  const BruteBm25 oracle(ctx().world);
  Rng rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    const auto& q = rng.pick(ctx().queries.queries);
    auto terms = query_terms(q.question);
    if (rng.bernoulli(0.3)) terms.push_back("zzzunseen");
    for (int k = 0; k < 10; ++k) {
      const auto d = static_cast<std::size_t>(rng.below(oracle.size()));
      const auto idx = ctx().index.find(oracle.id(d));
      ASSERT_TRUE(idx);
      EXPECT_NEAR(ctx().index.lexical_score(terms, *idx), oracle.score(terms, d), 1e-9);
    }
  }
}

TEST(Bm25Test, ExternalScoringAgreesOnIndexedText) {
  const auto& a = ctx().world.articles[3];
  const auto terms = query_terms(a.title);
  const auto idx = *ctx().index.find(a.article_id);
  EXPECT_NEAR(ctx().index.lexical_score_external(terms, a.title + "\n" + a.body),
              ctx().index.lexical_score(terms, idx), 1e-9);
}

TEST(Bm25Test, PositionalPostings) {
  const auto* p = ctx().index.postings("the");
  ASSERT_NE(p, nullptr);
  for (const auto& post : *p) {
    EXPECT_EQ(post.tf, post.positions.size());
    for (std::size_t i = 1; i < post.positions.size(); ++i) {
      EXPECT_LT(post.positions[i - 1], post.positions[i]);
    }
  }
  EXPECT_EQ(ctx().index.postings("zzzunseen"), nullptr);
}

TEST(EmbedTest, UnitNormAndSimilarity) {
  Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    const auto& a = rng.pick(ctx().world.articles);
    const auto v = embed(a.body);
    ASSERT_EQ(v.size(), static_cast<std::size_t>(kDefaultDim));
    double norm = 0;
    for (float x : v) norm += static_cast<double>(x) * x;
    EXPECT_NEAR(norm, 1.0, 1e-5);
    EXPECT_NEAR(cosine(v, embed(a.body)), 1.0, 1e-6);
  }
  const auto zero = embed("");
  for (float x : zero) EXPECT_EQ(x, 0.0f);
  EXPECT_GT(cosine(embed("solar adoption rate"), embed("solar adoption rates")),
            cosine(embed("solar adoption rate"), embed("museum ticket prices")));
}

TEST(FuseTest, Endpoints) {
  EXPECT_DOUBLE_EQ(fuse(0.8, 0.2, 1.0), 0.8);
  EXPECT_DOUBLE_EQ(fuse(0.8, 0.2, 0.0), 0.2);
  EXPECT_DOUBLE_EQ(fuse(0.8, 0.2, 0.5), 0.5);
  EXPECT_THROW(fuse(0.5, 0.5, 1.5), Error);
}

SessionOverlay overlay_for(const querygen::Query& q, Condition c, std::uint64_t seed) {
  SessionOverlay o;
  o.session_id = "s";
  o.condition = c;
  if (c == Condition::kAdversarial) {
    Rng rng(seed);
    o.honeypot = make_honeypot(q, ctx().world, rng);
  }
  return o;
}

TEST(SearchTest, RankedAndTieBroken) {
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const auto& q = rng.pick(ctx().queries.queries);
    SessionOverlay o;
    const int k = static_cast<int>(rng.between(1, 20));
    const auto res = search(ctx().index, o, q.question, {k, 0.5});
    ASSERT_EQ(res.size(), static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < res.size(); ++i) {
      EXPECT_EQ(res[i].rank, static_cast<int>(i));
      EXPECT_FALSE(res[i].pinned);
      if (i > 0) EXPECT_GE(res[i - 1].score, res[i].score);
    }
  }
}

TEST(SearchTest, PinsOnlyTheFirstAdversarialCall) {
  Rng rng(13);
  for (const auto& q : ctx().queries.queries) {
    for (int pin : {0, 3}) {
      auto o = overlay_for(q, Condition::kAdversarial, rng.next_u64());
      o.pin_rank = pin;
      const auto first = search(ctx().index, o, q.question, {10, 0.5});
      ASSERT_EQ(first[static_cast<std::size_t>(pin)].article_id, o.honeypot->article.article_id);
      EXPECT_TRUE(first[static_cast<std::size_t>(pin)].pinned);
      EXPECT_EQ(first[static_cast<std::size_t>(pin)].score, first[0].score);
      const auto second = search(ctx().index, o, q.question, {10, 0.5});
      for (const auto& r : second) EXPECT_FALSE(r.pinned);
    }
  }
}

TEST(SearchTest, PinRankClampedToPage) {
  const auto& q = ctx().queries.queries.front();
  auto o = overlay_for(q, Condition::kAdversarial, 1);
  o.pin_rank = 50;
  const auto res = search(ctx().index, o, q.question, {4, 0.5});
  ASSERT_EQ(res.size(), 4U);
  EXPECT_TRUE(res[3].pinned);
}

TEST(SearchTest, RejectsBadArguments) {
  SessionOverlay o;
  EXPECT_THROW(search(ctx().index, o, "", {10, 0.5}), Error);
  EXPECT_THROW(search(ctx().index, o, "solar", {0, 0.5}), Error);
  EXPECT_THROW(search(ctx().index, o, "solar", {10, -0.1}), Error);
}

TEST(HoneypotTest, AssertsADifferentAnswerFromAFreshSource) {
  std::set<std::string> domains;
  for (const auto& s : ctx().world.sites) domains.insert(s.domain_name);
  Rng rng(14);
  for (const auto& q : ctx().queries.queries) {
    for (int rep = 0; rep < 5; ++rep) {
      const auto hp = make_honeypot(q, ctx().world, rng);
      EXPECT_TRUE(hp.article.is_honeypot);
      EXPECT_EQ(ctx().world.find_article(hp.article.article_id), nullptr);
      EXPECT_EQ(domains.count(hp.domain), 0U) << hp.domain;
      EXPECT_NE(eval::normalize_answer(hp.honeypot_answer, ctx().world.aliases),
                eval::normalize_answer(q.exact_answer, ctx().world.aliases))
          << q.question;
      EXPECT_FALSE(hp.article.body.empty());
      EXPECT_EQ(hp.article.carries_claims, q.fact_ids);
    }
  }
}

TEST(HoneypotTest, DeterministicInSeed) {
  const auto& q = ctx().queries.queries.back();
  Rng a(99), b(99);
  const auto x = make_honeypot(q, ctx().world, a);
  const auto y = make_honeypot(q, ctx().world, b);
  EXPECT_EQ(x.article.body, y.article.body);
  EXPECT_EQ(x.honeypot_answer, y.honeypot_answer);
  EXPECT_EQ(x.domain, y.domain);
}

TEST(IndexTest, SaveLoadRoundTrip) {
  testing::TempDir dir("index");
  ctx().index.save(dir.path() / "index.bin");
  const auto back = SearchIndex::load(dir.path() / "index.bin", ctx().world.world_id);
  EXPECT_TRUE(back == ctx().index);
  try {
    SearchIndex::load(dir.path() / "index.bin", "someotherworld");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchema);
  }
}

TEST(IndexTest, BuildIsDeterministic) {
  EXPECT_TRUE(SearchIndex::build(ctx().world) == ctx().index);
}

}  // namespace
}  // namespace synthweb::search
