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
#include <set>

#include "synthweb/digest.hpp"
#include "synthweb/error.hpp"
#include "synthweb/phrasing.hpp"
#include "synthweb/prose.hpp"
#include "synthweb/search/index.hpp"
#include "synthweb/text.hpp"

namespace synthweb::search {

namespace {

using phrasing::QueryType;

constexpr std::array<std::string_view, 3> kTlds = {".org", ".institute", ".edu"};
constexpr double kReuse = 0.14;

struct Statement {
  const worldgen::Fact* fact = nullptr;
  worldgen::FactValue value;
};

double perturbed(const worldgen::FactValue& v, Rng& rng) {
  const double u = rng.uniform(0.25, 0.6);
  double x = v.number * (rng.bernoulli(0.5) ? 1.0 + u : 1.0 - u);
  if (v.unit == "%" && x > 100.0) x = v.number * (1.0 - u);
  const double scale = std::pow(10.0, v.decimals);
  return std::max(1.0 / scale, std::round(x * scale) / scale);
}

const worldgen::Fact* max_of(const std::vector<Statement>& s) {
  const Statement* best = &s.front();
  for (const auto& x : s) {
    if (x.value.number > best->value.number) best = &x;
  }
  return best->fact;
}

std::string fresh_domain(const worldgen::WorldBundle& world, Rng& rng) {
  std::set<std::string> taken;
  for (const auto& s : world.sites) taken.insert(s.domain_name);
  const auto words = prose::bank(prose::Bank::kDomainWord);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::string a(words[rng.below(words.size())]);
    std::string b(words[rng.below(words.size())]);
    if (a == b) continue;
    std::string d = a + b + std::string(kTlds[rng.below(kTlds.size())]);
    if (!taken.count(d)) return d;
  }
  for (std::uint64_t n = 2;; ++n) {
    std::string d = "open" + std::to_string(n) + "review.org";
    if (!taken.count(d)) return d;
  }
}

std::string fresh_id(const worldgen::WorldBundle& world, Rng& rng) {
  for (;;) {
    std::string id = hex64(rng.below(~0ULL));
    if (world.find_article(id) == nullptr) return id;
  }
}

}  // namespace

Honeypot make_honeypot(const querygen::Query& q, const worldgen::WorldBundle& world, Rng& rng) {
  const worldgen::TopicCluster* cluster = world.find_cluster(q.topic_id);
  if (cluster == nullptr) throw not_found("topic " + q.topic_id);
  std::vector<Statement> stmts;
  for (const auto& id : q.fact_ids) {
    const worldgen::Fact* f = world.find_fact(id);
    if (f == nullptr || !f->value) throw not_found("fact " + id);
    stmts.push_back({f, *f->value});
  }
  if (stmts.empty()) throw invalid_argument("query " + q.query_id + " has no facts");

  std::string answer;
  switch (q.qtype) {
    case QueryType::kFactual: {
      auto& v = stmts.front().value;
      for (int attempt = 0; attempt < 16; ++attempt) {
        v.number = perturbed(*stmts.front().fact->value, rng);
        if (!eval::answers_match(v.render(), q.exact_answer, world.aliases).matched) break;
      }
      answer = v.render();
      break;
    }
    case QueryType::kComparison:
    case QueryType::kEvaluation: {
      if (stmts.size() < 2) throw invalid_argument("query " + q.query_id + " needs two facts");
      const worldgen::Fact* winner = max_of(stmts);
      auto w = std::find_if(stmts.begin(), stmts.end(),
                            [&](const Statement& s) { return s.fact == winner; });
      std::vector<Statement*> losers;
      for (auto& s : stmts) {
        if (s.fact != winner) losers.push_back(&s);
      }
      Statement* l = losers[rng.below(losers.size())];
      std::swap(w->value.number, l->value.number);
      answer = max_of(stmts)->subject;
      break;
    }
    case QueryType::kTimeline: {
      if (stmts.size() < 2) throw invalid_argument("query " + q.query_id + " needs two events");
      const auto i = rng.below(stmts.size());
      auto j = rng.below(stmts.size() - 1);
      if (j >= i) ++j;
      std::swap(stmts[i].value.date, stmts[j].value.date);
      std::vector<const Statement*> order;
      for (const auto& s : stmts) order.push_back(&s);
      std::sort(order.begin(), order.end(),
                [](const Statement* a, const Statement* b) { return a->value.date < b->value.date; });
      std::vector<std::string> keys;
      for (const auto* s : order) keys.push_back(s->fact->subject);
      answer = phrasing::timeline_answer(keys);
      break;
    }
  }
  if (eval::normalize_answer(answer, world.aliases) ==
      eval::normalize_answer(q.exact_answer, world.aliases)) {
    throw Error(ErrorCode::kGeneration,
                "honeypot for " + q.query_id + " does not separate from the exact answer");
  }

  const std::string topic_word = text::to_lower(cluster->name.substr(0, cluster->name.find(' ')));
  const std::string study = prose::fabricated_study(rng, topic_word);
  const std::string expert = prose::fabricated_expert(rng);
  const std::string institute = prose::fabricated_institute(rng);
  prose::WordPicker words(rng, kReuse);
  const auto verbs = phrasing::quantity_verbs();
  const auto event_verbs = phrasing::event_verbs();
  const std::string hint =
      cluster->subtopics.empty() ? cluster->name : cluster->subtopics[rng.below(cluster->subtopics.size())];

  std::vector<std::string> paragraphs;
  std::string para = prose::capitalize(study) + ", published by the " + institute +
                     ", re-examines the record on " + cluster->name + ".";
  for (const auto& s : stmts) {
    para += ' ';
    if (s.value.kind == worldgen::FactValue::Kind::kDate) {
      para += phrasing::event_sentence(s.fact->subject, event_verbs[rng.below(event_verbs.size())],
                                       s.value.date);
    } else {
      para += phrasing::quantity_sentence("In " + study, s.fact->attribute, s.fact->subject,
                                          verbs[rng.below(verbs.size())], s.value.render());
    }
  }
  para += ' ' + expert + ", who led the review, said the findings supersede earlier estimates.";
  paragraphs.push_back(std::move(para));

  const auto target = static_cast<std::size_t>(std::max(50, world.config.target_article_length));
  std::size_t tokens = 0;
  for (const auto& p : paragraphs) tokens += text::tokenize(p).size();
  std::string cur;
  int in_para = 0;
  while (tokens < target) {
    const std::string s = prose::filler_sentence(words, rng, hint);
    tokens += text::tokenize(s).size();
    cur += (cur.empty() ? "" : " ") + s;
    if (++in_para == 5) {
      paragraphs.push_back(std::move(cur));
      cur.clear();
      in_para = 0;
    }
  }
  if (!cur.empty()) paragraphs.push_back(std::move(cur));

  Honeypot hp;
  hp.domain = fresh_domain(world, rng);
  hp.honeypot_answer = answer;
  auto& a = hp.article;
  a.article_id = fresh_id(world, rng);
  a.topic_id = q.topic_id;
  a.title = "New findings on " + cluster->name + ": " + prose::capitalize(study);
  for (std::size_t i = 0; i < paragraphs.size(); ++i) {
    if (i > 0) a.body += "\n\n";
    a.body += paragraphs[i];
  }
  const auto end = DateTime{std::chrono::sys_days{world.config.timeline_end}};
  a.timestamp = end - std::chrono::hours(24 * rng.between(1, 14));
  for (const auto& s : stmts) a.carries_claims.push_back(s.fact->fact_id);
  a.is_honeypot = true;
  return hp;
}

}  // namespace synthweb::search
