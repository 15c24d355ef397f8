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

#include "synthweb/querygen/query.hpp"

#include <algorithm>
#include <set>

#include "synthweb/error.hpp"
#include "synthweb/evalpipe/normalize.hpp"

namespace synthweb::querygen {

using worldgen::Article;
using worldgen::Fact;
using worldgen::FactValue;
using worldgen::Finding;
using worldgen::TopicCluster;
using worldgen::WorldBundle;

std::string_view to_string(Difficulty d) {
  switch (d) {
    case Difficulty::kEasy: return "easy";
    case Difficulty::kMedium: return "medium";
    case Difficulty::kHard: return "hard";
  }
  return "easy";
}

Difficulty difficulty_from_string(std::string_view s) {
  if (s == "easy") return Difficulty::kEasy;
  if (s == "medium") return Difficulty::kMedium;
  if (s == "hard") return Difficulty::kHard;
  throw invalid_argument("unknown difficulty: " + std::string(s));
}

Difficulty difficulty_for(QueryType t) {
  switch (t) {
    case QueryType::kFactual: return Difficulty::kEasy;
    case QueryType::kComparison: return Difficulty::kMedium;
    case QueryType::kTimeline:
    case QueryType::kEvaluation: return Difficulty::kHard;
  }
  return Difficulty::kEasy;
}

json to_json(const Query& q) {
  json ev = json::array();
  for (const auto& e : q.evidence) {
    ev.push_back({{"article_id", e.article_id}, {"begin", e.span.begin}, {"end", e.span.end}});
  }
  return json{{"query_id", q.query_id},
              {"world_id", q.world_id},
              {"topic_id", q.topic_id},
              {"qtype", phrasing::to_string(q.qtype)},
              {"question", q.question},
              {"exact_answer", q.exact_answer},
              {"evidence", ev},
              {"fact_ids", q.fact_ids},
              {"difficulty", to_string(q.difficulty)},
              {"contaminated", q.contaminated}};
}

Query query_from_json(const json& j) {
  Query q;
  try {
    q.query_id = j.at("query_id").get<std::string>();
    q.world_id = j.at("world_id").get<std::string>();
    q.topic_id = j.at("topic_id").get<std::string>();
    q.qtype = phrasing::query_type_from_string(j.at("qtype").get<std::string>());
    q.question = j.at("question").get<std::string>();
    q.exact_answer = j.at("exact_answer").get<std::string>();
    for (const auto& e : j.at("evidence")) {
      q.evidence.push_back({e.at("article_id").get<std::string>(),
                            {e.at("begin").get<std::size_t>(), e.at("end").get<std::size_t>()}});
    }
    q.fact_ids = j.at("fact_ids").get<std::vector<std::string>>();
    q.difficulty = difficulty_from_string(j.at("difficulty").get<std::string>());
    q.contaminated = j.value("contaminated", false);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("malformed query: ") + e.what());
  }
  return q;
}

std::map<QueryType, int> QuerySet::type_counts() const {
  std::map<QueryType, int> out;
  for (auto t : phrasing::kAllQueryTypes) out[t] = 0;
  for (const auto& q : queries) ++out[q.qtype];
  return out;
}

const Query* QuerySet::find(std::string_view query_id) const {
  for (const auto& q : queries) {
    if (q.query_id == query_id) return &q;
  }
  return nullptr;
}

TypeTargets default_type_targets() {
  return {{QueryType::kFactual, 37},
          {QueryType::kComparison, 40},
          {QueryType::kTimeline, 38},
          {QueryType::kEvaluation, 32}};
}

namespace {

// Sentence of `body` that states `fact`, if any.
std::optional<text::Span> locate_fact(std::string_view body, const Fact& f) {
  if (!f.value) return std::nullopt;
  for (const auto& span : text::sentence_spans(body)) {
    const auto sentence = body.substr(span.begin, span.size());
    if (f.value->kind == FactValue::Kind::kDate) {
      for (const auto& d : phrasing::find_event_dates(sentence, f.subject)) {
        if (d == f.value->date) return span;
      }
    } else {
      const std::string want = f.value->render();
      for (const auto& v : phrasing::find_quantity_values(sentence, f.attribute, f.subject)) {
        if (v == want) return span;
      }
    }
  }
  return std::nullopt;
}

class EvidenceFinder {
 public:
  explicit EvidenceFinder(const WorldBundle& w) : world_(w) {
    for (std::size_t i = 0; i < w.articles.size(); ++i) {
      for (const auto& ref : w.articles[i].carries_claims) carriers_[ref].push_back(i);
    }
  }

  // Evidence for `f` from a carrier article, avoiding `exclude` when another
  // carrier exists.
  std::optional<Evidence> find(const Fact& f, Rng& rng, const std::set<std::string>& exclude) {
    auto it = carriers_.find(f.fact_id);
    if (it == carriers_.end()) return std::nullopt;
    std::vector<std::size_t> order = it->second;
    rng.shuffle(order);
    std::stable_partition(order.begin(), order.end(), [&](std::size_t i) {
      return !exclude.count(world_.articles[i].article_id);
    });
    for (auto i : order) {
      const Article& a = world_.articles[i];
      if (auto span = locate_fact(a.body, f)) return Evidence{a.article_id, *span};
    }
    return std::nullopt;
  }

  // One evidence item per fact, preferring distinct articles.
  std::optional<std::vector<Evidence>> find_all(const std::vector<const Fact*>& facts, Rng& rng) {
    std::vector<Evidence> out;
    std::set<std::string> used;
    for (const Fact* f : facts) {
      auto e = find(*f, rng, used);
      if (!e) return std::nullopt;
      used.insert(e->article_id);
      out.push_back(std::move(*e));
    }
    return out;
  }

 private:
  const WorldBundle& world_;
  std::map<std::string, std::vector<std::size_t>> carriers_;
};

std::vector<const Fact*> quantity_facts(const TopicCluster& c, std::string_view attribute = {}) {
  std::vector<const Fact*> out;
  for (const auto& f : c.key_facts) {
    if (f.value && f.value->kind == FactValue::Kind::kQuantity &&
        (attribute.empty() || f.attribute == attribute)) {
      out.push_back(&f);
    }
  }
  return out;
}

const Fact* argmax(const std::vector<const Fact*>& facts) {
  const Fact* best = nullptr;
  for (const Fact* f : facts) {
    if (!best || f->value->number > best->value->number) best = f;
  }
  return best;
}

std::vector<std::string> subjects_of(const std::vector<const Fact*>& facts) {
  std::vector<std::string> out;
  for (const Fact* f : facts) out.push_back(f->subject);
  return out;
}

std::vector<std::string> ids_of(const std::vector<const Fact*>& facts) {
  std::vector<std::string> out;
  for (const Fact* f : facts) out.push_back(f->fact_id);
  return out;
}

// Ordered event keys for a set of date facts.
std::vector<std::string> chronological(std::vector<const Fact*> facts) {
  std::sort(facts.begin(), facts.end(),
            [](const Fact* a, const Fact* b) { return a->value->date < b->value->date; });
  return subjects_of(facts);
}

}  // namespace

QuerySet generate_queries(const WorldBundle& world, Rng& rng, const TypeTargets& targets,
                          GenerationLog* log) {
  if (world.clusters.empty()) throw invalid_argument("world has no clusters");
  QuerySet qs;
  qs.world_id = world.world_id;
  EvidenceFinder finder(world);
  std::set<std::string> seen_questions;
  auto skip = [&](const std::string& why) {
    if (log) log->skipped.push_back(why);
  };

  int serial = 0;
  for (auto type : phrasing::kAllQueryTypes) {
    auto it = targets.find(type);
    const int target = it == targets.end() ? 0 : it->second;
    Rng trng = rng.fork(std::string("type/") + std::string(phrasing::to_string(type)));
    for (int slot = 0; slot < target; ++slot) {
      const TopicCluster& c = world.clusters[static_cast<std::size_t>(slot) % world.clusters.size()];
      bool made = false;
      for (int attempt = 0; attempt < 40 && !made; ++attempt) {
        Query q;
        q.world_id = world.world_id;
        q.topic_id = c.topic_id;
        q.qtype = type;
        q.difficulty = difficulty_for(type);
        std::vector<const Fact*> facts;

        switch (type) {
          case QueryType::kFactual: {
            auto pool = quantity_facts(c);
            if (pool.empty()) break;
            const Fact* f = trng.pick(pool);
            facts = {f};
            q.question = phrasing::factual_question(f->attribute, f->subject);
            q.exact_answer = f->value->render();
            break;
          }
          case QueryType::kComparison:
          case QueryType::kEvaluation: {
            if (c.attributes.empty()) break;
            const auto& attr = trng.pick(c.attributes);
            auto pool = quantity_facts(c, attr.name);
            const std::size_t need = type == QueryType::kComparison ? 2 : 3;
            if (pool.size() < need) break;
            trng.shuffle(pool);
            facts.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(need));
            const auto names = subjects_of(facts);
            q.question = type == QueryType::kComparison
                             ? phrasing::comparison_question(attr.name, names[0], names[1])
                             : phrasing::evaluation_question(attr.name, names);
            q.exact_answer = argmax(facts)->subject;
            break;
          }
          case QueryType::kTimeline: {
            if (c.timeline.size() < 3) break;
            std::vector<const Fact*> pool;
            for (const auto& e : c.timeline) pool.push_back(c.find_fact(e.fact_id));
            trng.shuffle(pool);
            facts.assign(pool.begin(), pool.begin() + 3);
            const auto ordered = chronological(facts);
            auto asked = subjects_of(facts);
            // Never list the events already in order.
            while (asked == ordered) trng.shuffle(asked);
            q.question = phrasing::timeline_question(asked);
            q.exact_answer = phrasing::timeline_answer(ordered);
            break;
          }
        }
        if (facts.empty()) {
          skip(c.topic_id + " " + std::string(phrasing::to_string(type)) +
               ": not enough facts in cluster");
          break;
        }
        if (seen_questions.count(q.question)) continue;
        auto evidence = finder.find_all(facts, trng);
        if (!evidence) {
          skip(c.topic_id + ": no article states every fact for \"" + q.question + "\"");
          continue;
        }
        q.evidence = std::move(*evidence);
        q.fact_ids = ids_of(facts);
        char id[16];
        std::snprintf(id, sizeof id, "q%04d", serial++);
        q.query_id = id;
        seen_questions.insert(q.question);
        qs.queries.push_back(std::move(q));
        made = true;
      }
      if (!made) {
        skip(c.topic_id + " " + std::string(phrasing::to_string(type)) + " slot " +
             std::to_string(slot) + ": no fresh query after retries");
      }
    }
  }
  return qs;
}

// ------------------------------------------------------------ contamination

StubProbe::StubProbe(std::map<std::string, std::string> answer_key, double hit_rate,
                     std::uint64_t seed)
    : key_(std::move(answer_key)), hit_rate_(hit_rate), seed_(seed) {
  if (!(hit_rate >= 0.0 && hit_rate <= 1.0)) throw invalid_argument("hit rate must lie in [0, 1]");
}

StubProbe StubProbe::for_queries(const QuerySet& qs, double hit_rate, std::uint64_t seed) {
  std::map<std::string, std::string> key;
  for (const auto& q : qs.queries) key[q.question] = q.exact_answer;
  return StubProbe(std::move(key), hit_rate, seed);
}

std::string StubProbe::id() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "stub-probe/hit=%.3f/seed=%llu", hit_rate_,
                static_cast<unsigned long long>(seed_));
  return buf;
}

bool StubProbe::knows(const std::string& question) const {
  if (!key_.count(question)) return false;
  const double u = static_cast<double>(derive_seed(seed_, question) >> 11) * 0x1.0p-53;
  return u < hit_rate_;
}

std::string StubProbe::answer(const std::string& question) {
  return knows(question) ? key_.at(question) : std::string("unknown");
}

FilterResult contamination_filter(const QuerySet& qs, ProbeClient& probe,
                                  const eval::AliasTable& aliases) {
  FilterResult r;
  r.kept.world_id = qs.world_id;
  r.kept.filter = json{{"mode", "probe"}, {"probe", probe.id()}};
  for (const auto& q : qs.queries) {
    ProbeRecord rec{q.query_id, q.question, probe.answer(q.question), false};
    rec.hit = eval::answers_match(rec.probe_answer, q.exact_answer, aliases).matched;
    if (rec.hit) {
      Query removed = q;
      removed.contaminated = true;
      r.removed.push_back(std::move(removed));
    } else {
      Query kept = q;
      kept.contaminated = false;
      r.kept.queries.push_back(std::move(kept));
    }
    r.transcripts.push_back(std::move(rec));
  }
  return r;
}

QuerySet skip_filter(const QuerySet& qs) {
  QuerySet out = qs;
  for (auto& q : out.queries) q.contaminated = false;
  out.filter = json{{"mode", "none"}};
  return out;
}

// --------------------------------------------------------------- validation

std::vector<Finding> validate_query(const Query& q, const WorldBundle& world) {
  std::vector<Finding> out;
  auto add = [&](std::string code, std::string msg) {
    out.push_back({std::move(code), q.query_id, std::move(msg)});
  };
  const auto& aliases = world.aliases;

  if (q.world_id != world.world_id) add("world_mismatch", "query belongs to world " + q.world_id);
  const std::string truth = eval::normalize_answer(q.exact_answer, aliases);
  if (truth.empty()) add("unnormalizable_answer", "exact answer normalizes to nothing");

  std::string snippets;
  for (const auto& e : q.evidence) {
    const Article* a = world.find_article(e.article_id);
    if (a == nullptr) {
      add("dangling_evidence", "evidence article " + e.article_id + " does not exist");
      continue;
    }
    if (e.span.begin > e.span.end || e.span.end > a->body.size()) {
      add("evidence_span", "span outside article " + e.article_id);
      continue;
    }
    snippets += a->body.substr(e.span.begin, e.span.size());
    snippets += ' ';
  }
  if (q.evidence.empty()) add("dangling_evidence", "query has no evidence");

  std::vector<const Fact*> facts;
  for (const auto& id : q.fact_ids) {
    const Fact* f = world.find_fact(id);
    if (f == nullptr || !f->value) {
      add("answer_provenance", "linked fact " + id + " does not exist");
      return out;
    }
    facts.push_back(f);
  }
  if (facts.empty()) {
    add("answer_provenance", "query links no facts");
    return out;
  }

  std::string derived;
  std::vector<std::string> components;
  switch (q.qtype) {
    case QueryType::kFactual:
      derived = facts.front()->value->render();
      components = {q.exact_answer};
      break;
    case QueryType::kComparison:
    case QueryType::kEvaluation:
      derived = argmax(facts)->subject;
      components = {q.exact_answer};
      break;
    case QueryType::kTimeline:
      derived = phrasing::timeline_answer(chronological(facts));
      components = subjects_of(facts);
      break;
  }
  if (!eval::answers_match(q.exact_answer, derived, aliases).matched) {
    add("answer_provenance", "exact answer \"" + q.exact_answer +
                                 "\" does not follow from the linked facts (\"" + derived + "\")");
  }
  const std::string hay = " " + eval::normalize_surface(snippets, aliases) + " ";
  for (const auto& comp : components) {
    const std::string needle = " " + eval::normalize_surface(comp, aliases) + " ";
    if (hay.find(needle) == std::string::npos) {
      add("evidence_insufficient", "evidence does not state \"" + comp + "\"");
    }
  }
  return out;
}

// ------------------------------------------------------------------------ IO

void write_queries(const std::filesystem::path& path, const QuerySet& qs) {
  std::vector<json> rows;
  json header{{"schema", kQueriesSchema}, {"world_id", qs.world_id}, {"filter", qs.filter}};
  json counts = json::object();
  for (const auto& [t, n] : qs.type_counts()) counts[std::string(phrasing::to_string(t))] = n;
  header["type_counts"] = counts;
  rows.push_back(std::move(header));
  for (const auto& q : qs.queries) rows.push_back(to_json(q));
  write_jsonl_file(path, rows);
}

QuerySet read_queries(const std::filesystem::path& path) {
  auto rows = read_jsonl_file(path);
  if (rows.empty()) throw Error(ErrorCode::kSchema, "empty query file " + path.string());
  require_schema(rows.front(), kQueriesSchema, path.string());
  QuerySet qs;
  qs.world_id = rows.front().at("world_id").get<std::string>();
  qs.filter = rows.front().value("filter", json{{"mode", "unfiltered"}});
  for (std::size_t i = 1; i < rows.size(); ++i) qs.queries.push_back(query_from_json(rows[i]));
  return qs;
}

void write_filter_audit(const std::filesystem::path& path, const FilterResult& r) {
  std::vector<json> rows;
  rows.push_back({{"schema", "synthweb.probe_audit/1"},
                  {"world_id", r.kept.world_id},
                  {"filter", r.kept.filter},
                  {"removed", r.removed.size()},
                  {"kept", r.kept.queries.size()}});
  std::map<std::string, const Query*> removed;
  for (const auto& q : r.removed) removed[q.query_id] = &q;
  for (const auto& t : r.transcripts) {
    json row{{"query_id", t.query_id},
             {"question", t.question},
             {"probe_answer", t.probe_answer},
             {"hit", t.hit}};
    if (auto it = removed.find(t.query_id); it != removed.end()) row["query"] = to_json(*it->second);
    rows.push_back(std::move(row));
  }
  write_jsonl_file(path, rows);
}

}  // namespace synthweb::querygen
