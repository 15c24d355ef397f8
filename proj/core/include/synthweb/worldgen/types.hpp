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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "synthweb/dates.hpp"
#include "synthweb/evalpipe/normalize.hpp"
#include "synthweb/jsonio.hpp"

namespace synthweb::worldgen {

inline constexpr std::string_view kGeneratorVersion = "synthweb-worldgen/1.0";
inline constexpr std::string_view kWorldSchema = "synthweb.world/1";

enum class SiteType { kNews, kBlog, kResearch, kSocial, kConspiracy };

inline constexpr SiteType kAllSiteTypes[] = {SiteType::kNews, SiteType::kBlog,
                                             SiteType::kResearch, SiteType::kSocial,
                                             SiteType::kConspiracy};

std::string_view to_string(SiteType t);
SiteType site_type_from_string(std::string_view s);

struct CountRange {
  int min = 1;
  int max = 1;
  bool operator==(const CountRange&) const = default;
};

struct WorldConfig {
  std::uint64_t seed = 7;
  int n_sites = 20;
  double low_cred_fraction = 0.43;
  std::map<SiteType, double> site_type_weights = {{SiteType::kNews, 0.30},
                                                  {SiteType::kBlog, 0.40},
                                                  {SiteType::kResearch, 0.10},
                                                  {SiteType::kConspiracy, 0.10},
                                                  {SiteType::kSocial, 0.10}};
  int n_topics = 12;
  CountRange articles_per_cluster{160, 240};
  CountRange subtopics_per_topic{4, 8};
  Date timeline_start = Date{std::chrono::year{2023} / 1 / 1};
  Date timeline_end = Date{std::chrono::year{2024} / 7 / 1};  // 18 months
  int target_article_length = 595;
  // Share of a cluster's articles that carry a misinformation claim.
  double misinfo_article_rate = 0.08;
  // Probability that a misinformation-bearing article lands on a
  // low-credibility site (when the world has any).
  double misinfo_low_cred_share = 0.9;
  // Optional topic names; empty means the realizer's default taxonomy.
  std::vector<std::string> taxonomy;

  // Throws kInvalidArgument on the first violated invariant.
  void validate() const;

  json to_json() const;
  static WorldConfig from_json(const json& j);
  bool operator==(const WorldConfig&) const = default;
};

struct SiteProfile {
  std::string site_id;
  std::string domain_name;
  SiteType site_type = SiteType::kNews;
  double credibility = 0.0;
  double political_bias = 0.0;
  std::map<std::string, double> topic_biases;
  std::string style;
  double publication_rate = 1.0;  // articles per day

  bool low_credibility() const { return credibility <= 0.4; }
};

struct FactValue {
  enum class Kind { kQuantity, kDate, kEntity };
  Kind kind = Kind::kQuantity;
  double number = 0.0;
  int decimals = 0;
  std::string unit;  // display unit: "%", "megawatts", ...
  Date date{};
  std::string entity;

  // Display form used in prose and as an exact answer: "12.3%",
  // "1,450 megawatts", "March 14, 2024".
  std::string render() const;
};

struct Fact {
  std::string fact_id;
  std::string subject;    // entity or event key
  std::string attribute;  // "adoption rate"; "date" for timeline events
  std::string statement;
  std::optional<FactValue> value;
};

struct MisinfoClaim {
  std::string claim_id;
  std::string contradicts_fact_id;
  std::string statement;
  std::vector<std::string> fabricated_entities;
  FactValue false_value;
};

struct TimelineEvent {
  Date date{};
  std::string key;   // "Helios pilot launch"
  std::string text;  // one-line description
  std::string fact_id;
};

struct Narrative {
  std::string perspective;
  std::string text;
};

struct Attribute {
  std::string name;  // "adoption rate"
  std::string unit;  // display unit
};

struct TopicCluster {
  std::string topic_id;
  std::string name;
  std::vector<std::string> subtopics;
  std::vector<std::string> entities;
  std::vector<Attribute> attributes;
  double controversy_level = 0.0;
  std::vector<TimelineEvent> timeline;
  std::vector<Fact> key_facts;
  std::vector<Narrative> narratives;
  std::vector<MisinfoClaim> misinfo_claims;

  const Fact* find_fact(std::string_view fact_id) const;
};

struct Article {
  std::string article_id;
  std::string site_id;
  std::string topic_id;
  std::string title;
  std::string body;
  DateTime timestamp{};
  std::vector<std::string> citations;
  std::vector<std::string> carries_claims;  // fact ids and/or claim ids
  bool is_honeypot = false;
};

struct WorldBundle {
  std::string world_id;
  WorldConfig config;
  std::vector<SiteProfile> sites;
  std::vector<TopicCluster> clusters;
  std::vector<Article> articles;
  std::string generator_version{kGeneratorVersion};
  std::string realizer_id;
  eval::AliasTable aliases;

  const SiteProfile* find_site(std::string_view site_id) const;
  const TopicCluster* find_cluster(std::string_view topic_id) const;
  const Article* find_article(std::string_view article_id) const;
  const Fact* find_fact(std::string_view fact_id) const;
  const MisinfoClaim* find_claim(std::string_view claim_id) const;
  std::string domain_of(const Article& a) const;

  // Rebuilds the id lookup tables; call after mutating the vectors.
  void reindex();

 private:
  std::map<std::string, std::size_t, std::less<>> site_idx_, cluster_idx_, article_idx_;
  std::map<std::string, std::pair<std::size_t, std::size_t>, std::less<>> fact_idx_, claim_idx_;
};

json to_json(const SiteProfile& s);
json to_json(const FactValue& v);
json to_json(const Fact& f);
json to_json(const MisinfoClaim& c);
json to_json(const TopicCluster& c);
json to_json(const Article& a);

SiteProfile site_from_json(const json& j);
FactValue fact_value_from_json(const json& j);
Fact fact_from_json(const json& j);
MisinfoClaim claim_from_json(const json& j);
TopicCluster cluster_from_json(const json& j);
Article article_from_json(const json& j);

// world.json body without the world_id (the digest input together with the
// article lines).
json world_document(const WorldBundle& w);

// Canonical serialization: world document + articles, one per line.
std::string canonical_serialization(const WorldBundle& w);
std::string compute_world_id(const WorldBundle& w);

}  // namespace synthweb::worldgen
