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
#include "synthweb/jsonio.hpp"
#include "synthweb/text.hpp"
#include "synthweb/worldgen/generator.hpp"

namespace synthweb::worldgen {
namespace {

using testing::make_world;
using testing::small_config;

TEST(CredibilityTest, BandsAreDisjoint) {
  Rng rng(1);
  for (int i = 0; i < 20000; ++i) {
    const double c = assign_credibility(rng, 0.43);
    ASSERT_TRUE((c >= 0.1 && c <= 0.4) || (c >= 0.6 && c <= 0.9)) << c;
  }
  for (int i = 0; i < 1000; ++i) {
    const double lo = credibility_in_band(rng, true);
    const double hi = credibility_in_band(rng, false);
    ASSERT_LE(lo, 0.4);
    ASSERT_GE(hi, 0.6);
  }
}

TEST(CredibilityTest, ExtremeFractions) {
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    EXPECT_GE(assign_credibility(rng, 0.0), 0.6);
    EXPECT_LE(assign_credibility(rng, 1.0), 0.4);
  }
}

TEST(SitesTest, ExactLowCredibilityCountAndMix) {
  for (int n : {1, 7, 20, 123}) {
    WorldConfig c = small_config(3);
    c.n_sites = n;
    auto realizer = make_template_realizer();
    Rng rng(derive_seed(3, "sites"));
    const auto sites = generate_sites(c, *realizer, rng);
    ASSERT_EQ(static_cast<int>(sites.size()), n);
    int low = 0;
    std::map<SiteType, int> mix;
    std::set<std::string> domains;
    for (const auto& s : sites) {
      low += s.low_credibility() ? 1 : 0;
      ++mix[s.site_type];
      EXPECT_TRUE(domains.insert(s.domain_name).second) << s.domain_name;
      EXPECT_GT(s.publication_rate, 0.0);
    }
    EXPECT_EQ(low, static_cast<int>(std::lround(0.43 * n))) << n;
    // Largest-remainder apportionment stays within one site of each share.
    for (const auto& [type, w] : c.site_type_weights) {
      EXPECT_LE(std::abs(mix[type] - w * n), 1.0) << n;
    }
  }
}

class SmallWorldTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { world_ = new WorldBundle(make_world(small_config(11))); }
  static void TearDownTestSuite() { delete world_; }
  static WorldBundle* world_;
};
WorldBundle* SmallWorldTest::world_ = nullptr;

TEST_F(SmallWorldTest, PassesValidation) {
  const auto findings = validate_world(*world_);
  for (const auto& f : findings) ADD_FAILURE() << f.code << " " << f.subject << " " << f.message;
}

TEST_F(SmallWorldTest, ClustersMeetMinimums) {
  ASSERT_EQ(world_->clusters.size(), 4U);
  for (const auto& c : world_->clusters) {
    EXPECT_GE(c.timeline.size(), 3U);
    EXPECT_GE(c.key_facts.size(), 3U);
    EXPECT_GE(c.narratives.size(), 2U);
    EXPECT_FALSE(c.misinfo_claims.empty());
    for (std::size_t i = 1; i < c.timeline.size(); ++i) {
      EXPECT_LT(c.timeline[i - 1].date, c.timeline[i].date);
    }
  }
}

TEST_F(SmallWorldTest, CitationsPointBackward) {
  std::map<std::string, DateTime> when;
  for (const auto& a : world_->articles) when[a.article_id] = a.timestamp;
  for (const auto& a : world_->articles) {
    for (const auto& c : a.citations) {
      ASSERT_TRUE(when.count(c)) << a.article_id << " -> " << c;
      EXPECT_LT(when[c], a.timestamp);
    }
  }
}

TEST_F(SmallWorldTest, MisinformationLandsMostlyOnLowCredibilitySites) {
  int carriers = 0, low = 0;
  for (const auto& a : world_->articles) {
    bool carries = false;
    for (const auto& ref : a.carries_claims) carries |= world_->find_claim(ref) != nullptr;
    if (!carries) continue;
    ++carriers;
    low += world_->find_site(a.site_id)->low_credibility() ? 1 : 0;
  }
  ASSERT_GT(carriers, 0);
  EXPECT_GE(static_cast<double>(low) / carriers, 0.75);
}

TEST_F(SmallWorldTest, ContentStatistics) {
  const auto s = content_stats(*world_);
  EXPECT_EQ(s.articles, world_->articles.size());
  EXPECT_NEAR(s.mean_length, 595, 40);
  EXPECT_NEAR(s.mean_ttr, 0.635, 0.03);
  EXPECT_DOUBLE_EQ(s.site_type_pct.at(SiteType::kBlog), 40.0);
}

TEST(WorldgenTest, NoMisinformationWithoutLowCredibilitySites) {
  WorldConfig c = small_config(4);
  c.low_cred_fraction = 0.0;
  const auto w = make_world(c);
  for (const auto& a : w.articles) {
    for (const auto& ref : a.carries_claims) EXPECT_EQ(w.find_claim(ref), nullptr) << ref;
  }
  EXPECT_TRUE(validate_world(w).empty());
}

TEST(WorldgenTest, DeterministicAndSeedSensitive) {
  const auto a = make_world(small_config(21));
  const auto b = make_world(small_config(21));
  const auto c = make_world(small_config(22));
  EXPECT_EQ(a.world_id, b.world_id);
  EXPECT_NE(a.world_id, c.world_id);
  testing::TempDir da("wa"), db("wb");
  save_world(a, da.path());
  save_world(b, db.path());
  for (const char* f : {"world.json", "articles.jsonl", "aliases.json", "MANIFEST"}) {
    EXPECT_EQ(read_file(da.path() / f), read_file(db.path() / f)) << f;
  }
}

TEST(WorldgenTest, SaveLoadRoundTripAndTamperCheck) {
  const auto w = make_world(small_config(23));
  testing::TempDir dir("roundtrip");
  save_world(w, dir.path());
  const auto back = load_world(dir.path());
  EXPECT_EQ(back.world_id, w.world_id);
  EXPECT_EQ(back.articles.size(), w.articles.size());
  EXPECT_EQ(back.articles.front().body, w.articles.front().body);
  EXPECT_EQ(back.config, w.config);
  EXPECT_EQ(back.aliases, w.aliases);

  auto body = read_file(dir.path() / "articles.jsonl");
  body[body.find("\"body\":\"") + 8] ^= 0x01;
  write_file_atomic(dir.path() / "articles.jsonl", body);
  try {
    load_world(dir.path());
    FAIL() << "tampered bundle loaded";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchema);
  }
  EXPECT_NO_THROW(load_world(dir.path(), /*verify_id=*/false));
}

TEST(WorldgenTest, DanglingCitationFixture) {
  const auto w = load_world(SYNTHWEB_FIXTURE_DIR "/dangling_citation_world", false);
  bool found = false;
  for (const auto& f : validate_world(w)) {
    if (f.code == "dangling_citation") {
      found = true;
      EXPECT_EQ(f.subject, "fa24374fe1029543");
    }
  }
  EXPECT_TRUE(found);
}

TEST(WorldgenTest, ConfigValidation) {
  WorldConfig c;
  EXPECT_NO_THROW(c.validate());
  c.site_type_weights[SiteType::kNews] = 0.5;
  EXPECT_THROW(c.validate(), Error);
  c = WorldConfig{};
  c.articles_per_cluster = {5, 4};
  EXPECT_THROW(c.validate(), Error);
  c = WorldConfig{};
  c.low_cred_fraction = 1.5;
  EXPECT_THROW(c.validate(), Error);
  EXPECT_EQ(WorldConfig::from_json(WorldConfig{}.to_json()), WorldConfig{});
}

// Delegates to the template realizer but fails after a fixed number of
// article realizations.
class FailingRealizer : public ContentRealizer {
 public:
  explicit FailingRealizer(int fail_after) : inner_(make_template_realizer()), left_(fail_after) {}
  std::string id() const override { return inner_->id(); }
  std::vector<std::string> default_taxonomy() const override { return inner_->default_taxonomy(); }
  TopicDraft expand_topic(std::string_view n, const std::set<std::string>& r, Rng& rng) override {
    return inner_->expand_topic(n, r, rng);
  }
  SiteSurface site_surface(SiteType t, Rng& rng) override { return inner_->site_surface(t, rng); }
  ClaimDraft fabricate_claim(const TopicCluster& c, const Fact& f, Rng& rng) override {
    return inner_->fabricate_claim(c, f, rng);
  }
  RealizedArticle realize_article(const ArticlePlan& plan, Rng& rng) override {
    if (left_-- == 0) throw std::runtime_error("backend timed out");
    return inner_->realize_article(plan, rng);
  }

 private:
  std::unique_ptr<ContentRealizer> inner_;
  int left_;
};

TEST(WorldgenTest, RealizerFailureCarriesProvenance) {
  FailingRealizer r(5);
  try {
    generate_world(small_config(3), r);
    FAIL() << "expected GenerationError";
  } catch (const GenerationError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kGeneration);
    EXPECT_EQ(e.provenance().at("seed"), 3);
    EXPECT_NE(std::string(e.what()).find("backend timed out"), std::string::npos);
  }
}

}  // namespace
}  // namespace synthweb::worldgen
