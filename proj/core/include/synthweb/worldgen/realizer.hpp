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

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "synthweb/rng.hpp"
#include "synthweb/worldgen/types.hpp"

namespace synthweb::worldgen {

// Quantity attribute proposed by a realizer. Values are sampled by the
// generator inside [lo, hi] with the given number of decimals.
struct AttributeDraft {
  std::string name;
  std::string unit;  // "%" or a unit word
  double lo = 0.0;
  double hi = 0.0;
  int decimals = 0;
};

struct EventDraft {
  std::string key;
  std::string text;
  std::string entity;  // entity the event belongs to; may be empty
};

struct TopicDraft {
  std::string name;
  std::string topic_word;  // short noun used in fabricated study names
  std::vector<std::string> subtopics;
  std::vector<std::string> entities;
  std::vector<AttributeDraft> attributes;
  std::vector<EventDraft> events;
  std::vector<Narrative> narratives;
  double controversy_level = 0.0;
};

struct ClaimDraft {
  std::string statement;
  std::vector<std::string> fabricated_entities;
  FactValue false_value;
};

struct SiteSurface {
  std::string domain_name;
  std::string style;
};

enum class ArticleKind { kRoundup, kProfile, kTimelineRecap, kCommentary, kMisinfo };

std::string_view to_string(ArticleKind k);

struct CitedRef {
  std::string domain;
  std::string title;
};

// Everything the realizer needs to write one article. Content selection
// (which facts, events and claims an article carries) happens in the
// generator; the realizer only turns the plan into prose.
struct ArticlePlan {
  ArticleKind kind = ArticleKind::kCommentary;
  const TopicCluster* cluster = nullptr;
  const SiteProfile* site = nullptr;
  std::string focus;  // attribute name (roundup) or entity (profile)
  std::vector<const Fact*> facts;
  std::vector<const TimelineEvent*> events;
  std::vector<const MisinfoClaim*> claims;
  std::vector<const Narrative*> narratives;
  std::vector<CitedRef> cited;
  int target_length = 595;
};

struct RealizedArticle {
  std::string title;
  std::string body;
};

// Turns structured world content into text. The default implementation is a
// seeded grammar/template realizer so the pipeline runs offline; an external
// generative-model client can implement the same interface.
class ContentRealizer {
 public:
  virtual ~ContentRealizer() = default;

  // Part of the determinism key: worlds are a pure function of
  // (seed, config, generator version, realizer id).
  virtual std::string id() const = 0;

  virtual std::vector<std::string> default_taxonomy() const = 0;

  // Entity names start with a one-word prefix; prefixes in `reserved` are
  // already taken by earlier clusters and must not be reused.
  virtual TopicDraft expand_topic(std::string_view topic_name,
                                  const std::set<std::string>& reserved, Rng& rng) = 0;

  virtual SiteSurface site_surface(SiteType type, Rng& rng) = 0;

  // A false statement contradicting `fact`. `false_value` must differ from
  // the fact's value; the generator re-checks under the answer normalizer.
  virtual ClaimDraft fabricate_claim(const TopicCluster& cluster, const Fact& fact, Rng& rng) = 0;

  virtual RealizedArticle realize_article(const ArticlePlan& plan, Rng& rng) = 0;
};

std::unique_ptr<ContentRealizer> make_template_realizer();

}  // namespace synthweb::worldgen
