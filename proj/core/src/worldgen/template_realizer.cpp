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

#include <algorithm>
#include <array>
#include <cmath>

#include "synthweb/error.hpp"
#include "synthweb/phrasing.hpp"
#include "synthweb/prose.hpp"
#include "synthweb/text.hpp"
#include "synthweb/worldgen/realizer.hpp"

namespace synthweb::worldgen {

std::string_view to_string(ArticleKind k) {
  switch (k) {
    case ArticleKind::kRoundup: return "roundup";
    case ArticleKind::kProfile: return "profile";
    case ArticleKind::kTimelineRecap: return "timeline_recap";
    case ArticleKind::kCommentary: return "commentary";
    case ArticleKind::kMisinfo: return "misinfo";
  }
  return "commentary";
}

namespace {

using prose::Bank;

struct TopicSeed {
  std::string_view name;
  std::string_view core;  // capitalized word inside entity names
  std::string_view word;  // for fabricated study names
};

constexpr std::array<TopicSeed, 16> kTopics = {{
    {"community solar", "Solar", "solar"},
    {"offshore wind leasing", "Wind", "wind"},
    {"municipal broadband", "Broadband", "broadband"},
    {"battery recycling", "Recycling", "battery"},
    {"urban water reuse", "Water", "water"},
    {"regional rail electrification", "Rail", "rail"},
    {"heat pump adoption", "Thermal", "heating"},
    {"coastal flood defense", "Coastal", "flood"},
    {"electric bus fleets", "Transit", "transit"},
    {"urban tree canopy", "Canopy", "canopy"},
    {"grid storage", "Storage", "storage"},
    {"desalination", "Aqua", "desalination"},
    {"carbon capture pilots", "Carbon", "carbon"},
    {"organic waste composting", "Compost", "compost"},
    {"hydrogen trucking", "Hydrogen", "hydrogen"},
    {"rural telehealth", "Telehealth", "telehealth"},
}};

const std::array<AttributeDraft, 10> kAttributes = {{
    {"adoption rate", "%", 3.0, 90.0, 1},
    {"cost overrun", "%", 3.0, 90.0, 1},
    {"participation rate", "%", 3.0, 90.0, 1},
    {"completion rate", "%", 3.0, 90.0, 1},
    {"efficiency gain", "%", 3.0, 90.0, 1},
    {"installed capacity", "megawatts", 50.0, 2400.0, 0},
    {"network length", "kilometers", 20.0, 900.0, 0},
    {"annual output", "tonnes", 1000.0, 90000.0, 0},
    {"household reach", "households", 2000.0, 150000.0, 0},
    {"permitting delay", "days", 20.0, 400.0, 0},
}};

constexpr std::array<std::string_view, 5> kPerspectives = {
    "supporters", "skeptics", "industry analysts", "local residents", "regulators"};

constexpr std::array<std::string_view, 7> kLeads = {
    "",
    "By the latest count",
    "According to program filings",
    "In figures released this quarter",
    "Per the most recent disclosures",
    "As of the last reporting cycle",
    "Based on public records",
};

constexpr std::array<std::string_view, 6> kClaimTails = {
    "a figure officials have not addressed",
    "far from what has been publicly reported",
    "according to documents seen by the authors",
    "a discrepancy the program has yet to explain",
    "which would upend the official account",
    "contradicting the numbers circulated so far",
};

struct StyleInfo {
  std::string_view style;
  std::array<std::string_view, 3> tlds;
};

StyleInfo style_for(SiteType t) {
  switch (t) {
    case SiteType::kNews: return {"wire-report", {".com", ".news", ".press"}};
    case SiteType::kBlog: return {"personal-essay", {".blog", ".net", ".me"}};
    case SiteType::kResearch: return {"technical-brief", {".org", ".institute", ".edu"}};
    case SiteType::kSocial: return {"short-post", {".social", ".chat", ".community"}};
    case SiteType::kConspiracy: return {"expose", {".info", ".truth", ".zone"}};
  }
  return {"wire-report", {".com", ".news", ".press"}};
}

std::string first_word(std::string_view s) {
  const auto sp = s.find(' ');
  return std::string(s.substr(0, sp));
}

std::string lower(std::string_view s) { return text::to_lower(s); }

const TopicSeed* find_seed(std::string_view name) {
  for (const auto& t : kTopics) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

// Appends sentences to paragraphs while tracking the token budget.
class BodyWriter {
 public:
  void sentence(const std::string& s) {
    current_.push_back(s);
    tokens_ += text::token_count(s);
  }
  void paragraph_break() {
    if (!current_.empty()) {
      paragraphs_.push_back(text::join(current_, " "));
      current_.clear();
    }
  }
  std::size_t tokens() const { return tokens_; }
  std::string str() {
    paragraph_break();
    return text::join(paragraphs_, "\n\n");
  }

 private:
  std::vector<std::string> paragraphs_;
  std::vector<std::string> current_;
  std::size_t tokens_ = 0;
};

class TemplateRealizer final : public ContentRealizer {
 public:
  std::string id() const override { return "template-realizer/1"; }

  std::vector<std::string> default_taxonomy() const override {
    std::vector<std::string> out;
    for (const auto& t : kTopics) out.emplace_back(t.name);
    return out;
  }

  TopicDraft expand_topic(std::string_view topic_name, const std::set<std::string>& reserved,
                          Rng& rng) override {
    TopicDraft d;
    d.name = std::string(topic_name);
    const auto* seed = find_seed(topic_name);
    std::string core;
    if (seed) {
      core = std::string(seed->core);
      d.topic_word = std::string(seed->word);
    } else {
      // Unknown topic: build the core from its longest word.
      const auto words = text::split(topic_name, ' ');
      std::string best = words.empty() ? std::string("Civic") : words.front();
      for (const auto& w : words) {
        if (w.size() > best.size()) best = w;
      }
      core = prose::capitalize(lower(best));
      d.topic_word = lower(best);
    }

    // Subtopics: "<topic> <stem>".
    std::vector<std::string_view> stems(prose::bank(Bank::kSubtopicStem).begin(),
                                        prose::bank(Bank::kSubtopicStem).end());
    rng.shuffle(stems);
    for (std::size_t i = 0; i < 8 && i < stems.size(); ++i) {
      d.subtopics.push_back(d.name + " " + std::string(stems[i]));
    }

    // Entities with world-unique prefixes.
    std::vector<std::string_view> prefixes;
    for (auto p : prose::bank(Bank::kNamePrefix)) {
      if (!reserved.count(std::string(p))) prefixes.push_back(p);
    }
    if (prefixes.size() < 4) {
      throw Error(ErrorCode::kGeneration, "entity name prefixes exhausted");
    }
    rng.shuffle(prefixes);
    const auto kinds = prose::bank(Bank::kEntityKind);
    for (std::size_t i = 0; i < 4; ++i) {
      d.entities.push_back(std::string(prefixes[i]) + " " + core + " " +
                           std::string(kinds[rng.below(kinds.size())]));
    }

    std::vector<AttributeDraft> attrs(kAttributes.begin(), kAttributes.end());
    rng.shuffle(attrs);
    d.attributes.assign(attrs.begin(), attrs.begin() + 3);

    std::vector<std::string_view> nouns(prose::bank(Bank::kEventNoun).begin(),
                                        prose::bank(Bank::kEventNoun).end());
    rng.shuffle(nouns);
    const auto places = prose::bank(Bank::kPlace);
    for (std::size_t i = 0; i < 5; ++i) {
      const std::string& entity = d.entities[i % d.entities.size()];
      EventDraft e;
      e.entity = entity;
      e.key = first_word(entity) + " " + std::string(nouns[i]);
      e.text = entity + " " + std::string(nouns[i]) + " in " +
               std::string(places[rng.below(places.size())]);
      d.events.push_back(std::move(e));
    }

    std::vector<std::string_view> persp(kPerspectives.begin(), kPerspectives.end());
    rng.shuffle(persp);
    const std::size_t n_narr = 2 + rng.below(2);
    prose::WordPicker words(rng, 0.0);
    for (std::size_t i = 0; i < n_narr; ++i) {
      const std::string p(persp[i]);
      std::string t = prose::capitalize(p) + " argue that " + d.name + " " +
                      std::string(words.pick(Bank::kVerb)) + " " +
                      std::string(words.pick(Bank::kAdjective)) + " " +
                      std::string(words.pick(Bank::kNoun)) + " and " +
                      std::string(words.pick(Bank::kVerb)) + " " +
                      std::string(words.pick(Bank::kNoun)) + ". In their view, " +
                      std::string(words.pick(Bank::kAdjective)) + " " +
                      std::string(words.pick(Bank::kNoun)) + " matter more than " +
                      std::string(words.pick(Bank::kAdjective)) + " " +
                      std::string(words.pick(Bank::kNoun)) + ".";
      d.narratives.push_back({p, std::move(t)});
    }
    d.controversy_level = std::round(rng.uniform() * 1000.0) / 1000.0;
    return d;
  }

  SiteSurface site_surface(SiteType type, Rng& rng) override {
    const auto words = prose::bank(Bank::kDomainWord);
    const auto info = style_for(type);
    std::string a(words[rng.below(words.size())]);
    std::string b(words[rng.below(words.size())]);
    while (b == a) b = std::string(words[rng.below(words.size())]);
    return {a + b + std::string(info.tlds[rng.below(info.tlds.size())]), std::string(info.style)};
  }

  ClaimDraft fabricate_claim(const TopicCluster& cluster, const Fact& fact, Rng& rng) override {
    if (!fact.value || fact.value->kind != FactValue::Kind::kQuantity) {
      throw Error(ErrorCode::kGeneration, "claims can only contradict quantity facts");
    }
    ClaimDraft c;
    c.false_value = *fact.value;
    const double u = rng.uniform(0.3, 0.7);
    double v = fact.value->number * (rng.bernoulli(0.5) ? 1.0 + u : 1.0 - u);
    if (fact.value->unit == "%" && v > 95.0) v = fact.value->number * (1.0 - u);
    const double scale = std::pow(10.0, fact.value->decimals);
    c.false_value.number = std::max(1.0 / scale, std::round(v * scale) / scale);

    const std::string topic_word = cluster.name.empty() ? "program" : first_word(cluster.name);
    const std::string study = prose::fabricated_study(rng, topic_word);
    const std::string expert = prose::fabricated_expert(rng);
    c.fabricated_entities = {study, expert};
    const auto verbs = phrasing::quantity_verbs();
    const auto reports = prose::bank(Bank::kReportVerb);
    c.statement = phrasing::claim_sentence(
        prose::capitalize(study), reports[rng.below(reports.size())], fact.attribute, fact.subject,
        verbs[rng.below(verbs.size())], c.false_value.render(),
        kClaimTails[rng.below(kClaimTails.size())]);
    return c;
  }

  RealizedArticle realize_article(const ArticlePlan& plan, Rng& rng) override {
    if (plan.cluster == nullptr || plan.site == nullptr) {
      throw invalid_argument("article plan lacks a cluster or site");
    }
    const TopicCluster& c = *plan.cluster;
    const double reuse = 0.14;
    prose::WordPicker words(rng, reuse);
    BodyWriter w;
    RealizedArticle out;
    const auto verbs = phrasing::quantity_verbs();
    const auto event_verbs = phrasing::event_verbs();

    auto fact_line = [&](const Fact& f) {
      if (!f.value) return;
      if (f.value->kind == FactValue::Kind::kDate) {
        w.sentence(phrasing::event_sentence(f.subject, event_verbs[rng.below(event_verbs.size())],
                                            f.value->date));
      } else {
        w.sentence(phrasing::quantity_sentence(kLeads[rng.below(kLeads.size())], f.attribute,
                                               f.subject, verbs[rng.below(verbs.size())],
                                               f.value->render()));
      }
    };
    auto event_line = [&](const TimelineEvent& e) {
      w.sentence(phrasing::event_sentence(e.key, event_verbs[rng.below(event_verbs.size())],
                                          e.date));
    };
    auto fillers = [&](int n, std::string_view hint) {
      for (int i = 0; i < n; ++i) w.sentence(prose::filler_sentence(words, rng, hint));
    };
    const std::string subtopic =
        c.subtopics.empty() ? c.name : c.subtopics[rng.below(c.subtopics.size())];

    switch (plan.kind) {
      case ArticleKind::kRoundup: {
        static constexpr std::array<std::string_view, 4> kShapes = {
            "How {t} programs compare on {a}", "{A} across {t}: the latest numbers",
            "Where {t} stands on {a}", "Tracking {a} in {t}"};
        out.title = title_from(kShapes[rng.below(kShapes.size())], c.name, plan.focus);
        std::vector<std::string> names;
        for (const Fact* f : plan.facts) names.push_back(f->subject);
        const std::string listed = list_of(names);
        w.sentence("Programs in " + c.name + " such as " + listed +
                   " report very different results on " + plan.focus + ".");
        fillers(1, subtopic);
        for (const Fact* f : plan.facts) {
          fact_line(*f);
          if (rng.bernoulli(0.5)) fillers(1, subtopic);
        }
        w.sentence("Across " + listed + ", the spread in " + plan.focus + " remains wide.");
        w.paragraph_break();
        break;
      }
      case ArticleKind::kProfile: {
        static constexpr std::array<std::string_view, 4> kShapes = {
            "Inside {E}", "{E}: a progress report", "A closer look at {E}",
            "What {E} has delivered so far"};
        out.title = title_from(kShapes[rng.below(kShapes.size())], c.name, "", plan.focus);
        w.sentence(plan.focus + " is one of the more closely watched efforts in " + c.name + ".");
        fillers(1, subtopic);
        for (const Fact* f : plan.facts) {
          fact_line(*f);
          if (rng.bernoulli(0.4)) fillers(1, subtopic);
        }
        for (const TimelineEvent* e : plan.events) event_line(*e);
        w.paragraph_break();
        break;
      }
      case ArticleKind::kTimelineRecap: {
        static constexpr std::array<std::string_view, 3> kShapes = {
            "{T}: a timeline of key moments", "How {t} got here",
            "The milestones that shaped {t}"};
        out.title = title_from(kShapes[rng.below(kShapes.size())], c.name, "");
        w.sentence("The story of " + c.name + " has unfolded in stages.");
        fillers(1, subtopic);
        for (const TimelineEvent* e : plan.events) {
          event_line(*e);
          if (rng.bernoulli(0.3)) fillers(1, subtopic);
        }
        w.paragraph_break();
        break;
      }
      case ArticleKind::kCommentary: {
        static constexpr std::array<std::string_view, 4> kShapes = {
            "The debate over {t} is not going away", "Opinion: rethinking {t}",
            "Why {t} divides its observers", "{T} and its critics"};
        out.title = title_from(kShapes[rng.below(kShapes.size())], c.name, "");
        for (const Narrative* n : plan.narratives) w.sentence(n->text);
        fillers(2, subtopic);
        for (const Fact* f : plan.facts) fact_line(*f);
        w.paragraph_break();
        break;
      }
      case ArticleKind::kMisinfo: {
        const MisinfoClaim* claim = plan.claims.empty() ? nullptr : plan.claims.front();
        const std::string source =
            claim && !claim->fabricated_entities.empty() ? claim->fabricated_entities.front()
                                                         : std::string("an unpublished audit");
        static constexpr std::array<std::string_view, 3> kShapes = {
            "What {S} reveals", "{S} and the numbers nobody mentions",
            "Questions raised by {S}"};
        out.title = kShapes[rng.below(kShapes.size())];
        replace_all(out.title, "{S}", prose::capitalize(source));
        if (claim) {
          w.sentence(claim->statement);
          if (claim->fabricated_entities.size() > 1) {
            w.sentence(claim->fabricated_entities[1] + " called the finding hard to ignore.");
          }
        }
        for (const Narrative* n : plan.narratives) w.sentence(n->text);
        fillers(1, subtopic);
        w.paragraph_break();
        break;
      }
    }

    for (const auto& ref : plan.cited) {
      w.sentence("As " + ref.domain + " noted in \"" + ref.title +
                 "\", the picture keeps shifting.");
    }
    w.paragraph_break();

    const auto target = static_cast<std::size_t>(std::max(1, plan.target_length));
    int since_break = 0;
    while (w.tokens() < target) {
      w.sentence(prose::filler_sentence(words, rng, subtopic));
      if (++since_break >= 5) {
        w.paragraph_break();
        since_break = 0;
      }
    }
    out.body = w.str();
    return out;
  }

 private:
  static void replace_all(std::string& s, std::string_view from, const std::string& to) {
    for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
      s.replace(pos, from.size(), to);
    }
  }

  static std::string list_of(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i > 0) out += (i + 1 == items.size()) ? (items.size() > 2 ? ", and " : " and ") : ", ";
      out += items[i];
    }
    return out;
  }

  static std::string title_from(std::string_view shape, const std::string& topic,
                                const std::string& attribute, const std::string& entity = "") {
    std::string t(shape);
    replace_all(t, "{T}", prose::capitalize(topic));
    replace_all(t, "{t}", topic);
    replace_all(t, "{A}", prose::capitalize(attribute));
    replace_all(t, "{a}", attribute);
    replace_all(t, "{E}", entity);
    return t;
  }
};

}  // namespace

std::unique_ptr<ContentRealizer> make_template_realizer() {
  return std::make_unique<TemplateRealizer>();
}

}  // namespace synthweb::worldgen
