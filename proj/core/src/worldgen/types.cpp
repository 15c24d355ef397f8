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

#include "synthweb/worldgen/types.hpp"

#include <cmath>

#include "synthweb/digest.hpp"
#include "synthweb/error.hpp"
#include "synthweb/text.hpp"

namespace synthweb::worldgen {

std::string_view to_string(SiteType t) {
  switch (t) {
    case SiteType::kNews: return "news";
    case SiteType::kBlog: return "blog";
    case SiteType::kResearch: return "research";
    case SiteType::kSocial: return "social";
    case SiteType::kConspiracy: return "conspiracy";
  }
  return "news";
}

SiteType site_type_from_string(std::string_view s) {
  for (auto t : kAllSiteTypes) {
    if (to_string(t) == s) return t;
  }
  throw invalid_argument("unknown site type: " + std::string(s));
}

// ------------------------------------------------------------------ config

void WorldConfig::validate() const {
  if (!(low_cred_fraction >= 0.0 && low_cred_fraction <= 1.0)) {
    throw invalid_argument("low_cred_fraction must lie in [0, 1]");
  }
  double sum = 0.0;
  for (const auto& [type, w] : site_type_weights) {
    if (!(w >= 0.0)) throw invalid_argument("site type weights must be non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw invalid_argument("site_type_weights must sum to 1 (got " + std::to_string(sum) + ")");
  }
  if (n_sites < 1) throw invalid_argument("n_sites must be >= 1");
  if (n_topics < 1) throw invalid_argument("n_topics must be >= 1");
  if (articles_per_cluster.min < 1 || articles_per_cluster.max < articles_per_cluster.min) {
    throw invalid_argument("articles_per_cluster must be a range with min >= 1");
  }
  if (subtopics_per_topic.min < 1 || subtopics_per_topic.max < subtopics_per_topic.min) {
    throw invalid_argument("subtopics_per_topic must be a range with min >= 1");
  }
  if (!(timeline_start < timeline_end)) {
    throw invalid_argument("timeline start must precede timeline end");
  }
  if (target_article_length < 1) throw invalid_argument("target_article_length must be >= 1");
  if (!(misinfo_article_rate >= 0.0 && misinfo_article_rate <= 1.0)) {
    throw invalid_argument("misinfo_article_rate must lie in [0, 1]");
  }
  if (!(misinfo_low_cred_share >= 0.0 && misinfo_low_cred_share <= 1.0)) {
    throw invalid_argument("misinfo_low_cred_share must lie in [0, 1]");
  }
}

namespace {

json range_json(const CountRange& r) { return json::array({r.min, r.max}); }

CountRange range_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw invalid_argument("count range must be [min, max]");
  return {j[0].get<int>(), j[1].get<int>()};
}

}  // namespace

json WorldConfig::to_json() const {
  json weights = json::object();
  for (const auto& [type, w] : site_type_weights) weights[std::string(worldgen::to_string(type))] = w;
  return json{
      {"seed", seed},
      {"n_sites", n_sites},
      {"low_cred_fraction", low_cred_fraction},
      {"site_type_weights", weights},
      {"n_topics", n_topics},
      {"articles_per_cluster", range_json(articles_per_cluster)},
      {"subtopics_per_topic", range_json(subtopics_per_topic)},
      {"timeline_span", json::array({format_date(timeline_start), format_date(timeline_end)})},
      {"target_article_length", target_article_length},
      {"misinfo_article_rate", misinfo_article_rate},
      {"misinfo_low_cred_share", misinfo_low_cred_share},
      {"taxonomy", taxonomy},
  };
}

// Missing keys keep their defaults, so a config file may override a subset.
WorldConfig WorldConfig::from_json(const json& j) {
  if (!j.is_object()) throw invalid_argument("world config must be a JSON object");
  WorldConfig c;
  try {
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("n_sites")) c.n_sites = j.at("n_sites").get<int>();
    if (j.contains("low_cred_fraction")) c.low_cred_fraction = j.at("low_cred_fraction").get<double>();
    if (j.contains("site_type_weights")) {
      c.site_type_weights.clear();
      for (const auto& [k, v] : j.at("site_type_weights").items()) {
        c.site_type_weights[site_type_from_string(k)] = v.get<double>();
      }
    }
    if (j.contains("n_topics")) c.n_topics = j.at("n_topics").get<int>();
    if (j.contains("articles_per_cluster")) c.articles_per_cluster = range_from(j.at("articles_per_cluster"));
    if (j.contains("subtopics_per_topic")) c.subtopics_per_topic = range_from(j.at("subtopics_per_topic"));
    if (j.contains("timeline_span")) {
      const auto& span = j.at("timeline_span");
      if (!span.is_array() || span.size() != 2) throw invalid_argument("timeline_span must be [start, end]");
      c.timeline_start = parse_date(span[0].get<std::string>());
      c.timeline_end = parse_date(span[1].get<std::string>());
    }
    if (j.contains("target_article_length")) c.target_article_length = j.at("target_article_length").get<int>();
    if (j.contains("misinfo_article_rate")) c.misinfo_article_rate = j.at("misinfo_article_rate").get<double>();
    if (j.contains("misinfo_low_cred_share")) c.misinfo_low_cred_share = j.at("misinfo_low_cred_share").get<double>();
    if (j.contains("taxonomy")) c.taxonomy = j.at("taxonomy").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw invalid_argument(std::string("malformed world config: ") + e.what());
  }
  return c;
}

// ------------------------------------------------------------------- values

std::string FactValue::render() const {
  switch (kind) {
    case Kind::kQuantity: {
      const std::string n = text::with_thousands(number, decimals);
      if (unit == "%") return n + "%";
      if (unit.empty()) return n;
      return n + " " + unit;
    }
    case Kind::kDate: return format_long_date(date);
    case Kind::kEntity: return entity;
  }
  return {};
}

const Fact* TopicCluster::find_fact(std::string_view fact_id) const {
  for (const auto& f : key_facts) {
    if (f.fact_id == fact_id) return &f;
  }
  return nullptr;
}

// ------------------------------------------------------------------- bundle

const SiteProfile* WorldBundle::find_site(std::string_view id) const {
  auto it = site_idx_.find(id);
  return it == site_idx_.end() ? nullptr : &sites[it->second];
}

const TopicCluster* WorldBundle::find_cluster(std::string_view id) const {
  auto it = cluster_idx_.find(id);
  return it == cluster_idx_.end() ? nullptr : &clusters[it->second];
}

const Article* WorldBundle::find_article(std::string_view id) const {
  auto it = article_idx_.find(id);
  return it == article_idx_.end() ? nullptr : &articles[it->second];
}

const Fact* WorldBundle::find_fact(std::string_view id) const {
  auto it = fact_idx_.find(id);
  if (it == fact_idx_.end()) return nullptr;
  return &clusters[it->second.first].key_facts[it->second.second];
}

const MisinfoClaim* WorldBundle::find_claim(std::string_view id) const {
  auto it = claim_idx_.find(id);
  if (it == claim_idx_.end()) return nullptr;
  return &clusters[it->second.first].misinfo_claims[it->second.second];
}

std::string WorldBundle::domain_of(const Article& a) const {
  const auto* s = find_site(a.site_id);
  return s ? s->domain_name : std::string();
}

void WorldBundle::reindex() {
  site_idx_.clear();
  cluster_idx_.clear();
  article_idx_.clear();
  fact_idx_.clear();
  claim_idx_.clear();
  for (std::size_t i = 0; i < sites.size(); ++i) site_idx_.emplace(sites[i].site_id, i);
  for (std::size_t i = 0; i < articles.size(); ++i) article_idx_.emplace(articles[i].article_id, i);
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    cluster_idx_.emplace(clusters[c].topic_id, c);
    for (std::size_t f = 0; f < clusters[c].key_facts.size(); ++f) {
      fact_idx_.emplace(clusters[c].key_facts[f].fact_id, std::make_pair(c, f));
    }
    for (std::size_t m = 0; m < clusters[c].misinfo_claims.size(); ++m) {
      claim_idx_.emplace(clusters[c].misinfo_claims[m].claim_id, std::make_pair(c, m));
    }
  }
}

// --------------------------------------------------------------------- JSON

json to_json(const SiteProfile& s) {
  return json{{"site_id", s.site_id},
              {"domain_name", s.domain_name},
              {"site_type", to_string(s.site_type)},
              {"credibility", s.credibility},
              {"political_bias", s.political_bias},
              {"topic_biases", s.topic_biases},
              {"style", s.style},
              {"publication_rate", s.publication_rate}};
}

SiteProfile site_from_json(const json& j) {
  SiteProfile s;
  s.site_id = j.at("site_id").get<std::string>();
  s.domain_name = j.at("domain_name").get<std::string>();
  s.site_type = site_type_from_string(j.at("site_type").get<std::string>());
  s.credibility = j.at("credibility").get<double>();
  s.political_bias = j.at("political_bias").get<double>();
  s.topic_biases = j.at("topic_biases").get<std::map<std::string, double>>();
  s.style = j.at("style").get<std::string>();
  s.publication_rate = j.at("publication_rate").get<double>();
  return s;
}

json to_json(const FactValue& v) {
  switch (v.kind) {
    case FactValue::Kind::kQuantity:
      return json{{"kind", "quantity"},
                  {"number", v.number},
                  {"decimals", v.decimals},
                  {"unit", v.unit},
                  {"rendered", v.render()}};
    case FactValue::Kind::kDate:
      return json{{"kind", "date"}, {"date", format_date(v.date)}, {"rendered", v.render()}};
    case FactValue::Kind::kEntity:
      return json{{"kind", "entity"}, {"entity", v.entity}, {"rendered", v.render()}};
  }
  return json::object();
}

FactValue fact_value_from_json(const json& j) {
  FactValue v;
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "quantity") {
    v.kind = FactValue::Kind::kQuantity;
    v.number = j.at("number").get<double>();
    v.decimals = j.at("decimals").get<int>();
    v.unit = j.at("unit").get<std::string>();
  } else if (kind == "date") {
    v.kind = FactValue::Kind::kDate;
    v.date = parse_date(j.at("date").get<std::string>());
  } else if (kind == "entity") {
    v.kind = FactValue::Kind::kEntity;
    v.entity = j.at("entity").get<std::string>();
  } else {
    throw Error(ErrorCode::kSchema, "unknown fact value kind: " + kind);
  }
  return v;
}

json to_json(const Fact& f) {
  json j{{"fact_id", f.fact_id},
         {"subject", f.subject},
         {"attribute", f.attribute},
         {"statement", f.statement}};
  j["value"] = f.value ? to_json(*f.value) : json(nullptr);
  return j;
}

Fact fact_from_json(const json& j) {
  Fact f;
  f.fact_id = j.at("fact_id").get<std::string>();
  f.subject = j.at("subject").get<std::string>();
  f.attribute = j.at("attribute").get<std::string>();
  f.statement = j.at("statement").get<std::string>();
  if (j.contains("value") && !j.at("value").is_null()) f.value = fact_value_from_json(j.at("value"));
  return f;
}

json to_json(const MisinfoClaim& c) {
  return json{{"claim_id", c.claim_id},
              {"contradicts_fact_id", c.contradicts_fact_id},
              {"statement", c.statement},
              {"fabricated_entities", c.fabricated_entities},
              {"false_value", to_json(c.false_value)}};
}

MisinfoClaim claim_from_json(const json& j) {
  MisinfoClaim c;
  c.claim_id = j.at("claim_id").get<std::string>();
  c.contradicts_fact_id = j.at("contradicts_fact_id").get<std::string>();
  c.statement = j.at("statement").get<std::string>();
  c.fabricated_entities = j.at("fabricated_entities").get<std::vector<std::string>>();
  c.false_value = fact_value_from_json(j.at("false_value"));
  return c;
}

json to_json(const TopicCluster& c) {
  json timeline = json::array();
  for (const auto& e : c.timeline) {
    timeline.push_back({{"date", format_date(e.date)},
                        {"key", e.key},
                        {"text", e.text},
                        {"fact_id", e.fact_id}});
  }
  json attributes = json::array();
  for (const auto& a : c.attributes) attributes.push_back({{"name", a.name}, {"unit", a.unit}});
  json facts = json::array();
  for (const auto& f : c.key_facts) facts.push_back(to_json(f));
  json narratives = json::array();
  for (const auto& n : c.narratives) {
    narratives.push_back({{"perspective", n.perspective}, {"text", n.text}});
  }
  json claims = json::array();
  for (const auto& m : c.misinfo_claims) claims.push_back(to_json(m));
  return json{{"topic_id", c.topic_id},
              {"name", c.name},
              {"subtopics", c.subtopics},
              {"entities", c.entities},
              {"attributes", attributes},
              {"controversy_level", c.controversy_level},
              {"timeline", timeline},
              {"key_facts", facts},
              {"narratives", narratives},
              {"misinfo_claims", claims}};
}

TopicCluster cluster_from_json(const json& j) {
  TopicCluster c;
  c.topic_id = j.at("topic_id").get<std::string>();
  c.name = j.at("name").get<std::string>();
  c.subtopics = j.at("subtopics").get<std::vector<std::string>>();
  c.entities = j.at("entities").get<std::vector<std::string>>();
  for (const auto& a : j.at("attributes")) {
    c.attributes.push_back({a.at("name").get<std::string>(), a.at("unit").get<std::string>()});
  }
  c.controversy_level = j.at("controversy_level").get<double>();
  for (const auto& e : j.at("timeline")) {
    c.timeline.push_back({parse_date(e.at("date").get<std::string>()), e.at("key").get<std::string>(),
                          e.at("text").get<std::string>(), e.at("fact_id").get<std::string>()});
  }
  for (const auto& f : j.at("key_facts")) c.key_facts.push_back(fact_from_json(f));
  for (const auto& n : j.at("narratives")) {
    c.narratives.push_back({n.at("perspective").get<std::string>(), n.at("text").get<std::string>()});
  }
  for (const auto& m : j.at("misinfo_claims")) c.misinfo_claims.push_back(claim_from_json(m));
  return c;
}

json to_json(const Article& a) {
  return json{{"article_id", a.article_id},
              {"site_id", a.site_id},
              {"topic_id", a.topic_id},
              {"title", a.title},
              {"body", a.body},
              {"timestamp", format_datetime(a.timestamp)},
              {"citations", a.citations},
              {"carries_claims", a.carries_claims},
              {"is_honeypot", a.is_honeypot}};
}

Article article_from_json(const json& j) {
  Article a;
  a.article_id = j.at("article_id").get<std::string>();
  a.site_id = j.at("site_id").get<std::string>();
  a.topic_id = j.at("topic_id").get<std::string>();
  a.title = j.at("title").get<std::string>();
  a.body = j.at("body").get<std::string>();
  a.timestamp = parse_datetime(j.at("timestamp").get<std::string>());
  a.citations = j.at("citations").get<std::vector<std::string>>();
  a.carries_claims = j.at("carries_claims").get<std::vector<std::string>>();
  a.is_honeypot = j.value("is_honeypot", false);
  return a;
}

json world_document(const WorldBundle& w) {
  json sites = json::array();
  for (const auto& s : w.sites) sites.push_back(to_json(s));
  json clusters = json::array();
  for (const auto& c : w.clusters) clusters.push_back(to_json(c));
  return json{{"schema", kWorldSchema},
              {"generator_version", w.generator_version},
              {"realizer_id", w.realizer_id},
              {"config", w.config.to_json()},
              {"sites", sites},
              {"clusters", clusters},
              {"article_count", w.articles.size()}};
}

std::string canonical_serialization(const WorldBundle& w) {
  std::string out = world_document(w).dump();
  out.push_back('\n');
  for (const auto& a : w.articles) {
    out += to_json(a).dump();
    out.push_back('\n');
  }
  return out;
}

std::string compute_world_id(const WorldBundle& w) {
  return digest128_hex(canonical_serialization(w));
}

}  // namespace synthweb::worldgen
