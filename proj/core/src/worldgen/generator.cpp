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

#include "synthweb/worldgen/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "synthweb/digest.hpp"
#include "synthweb/evalpipe/normalize.hpp"
#include "synthweb/phrasing.hpp"
#include "synthweb/text.hpp"

namespace synthweb::worldgen {

namespace {

constexpr double kKindShares[] = {0.35, 0.30, 0.12};  // roundup, profile, recap
constexpr double kMinRelativeGap = 0.15;
constexpr int kClaimRetries = 8;

double round_to(double v, int decimals) {
  const double s = std::pow(10.0, decimals);
  return std::round(v * s) / s;
}

// Largest-remainder apportionment of `n` over `weights`.
std::vector<int> apportion(int n, const std::vector<double>& weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<int> counts(weights.size(), 0);
  if (n <= 0 || total <= 0.0) return counts;
  std::vector<std::pair<double, std::size_t>> rem;
  int used = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double exact = n * weights[i] / total;
    counts[i] = static_cast<int>(std::floor(exact));
    used += counts[i];
    rem.emplace_back(exact - counts[i], i);
  }
  std::stable_sort(rem.begin(), rem.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; used < n; ++k, ++used) ++counts[rem[k % rem.size()].second];
  return counts;
}

std::string first_word(std::string_view s) { return std::string(s.substr(0, s.find(' '))); }

bool values_separated(const std::vector<double>& vals, double candidate) {
  for (double v : vals) {
    const double hi = std::max(std::abs(v), std::abs(candidate));
    if (hi == 0.0 || std::abs(v - candidate) / hi < kMinRelativeGap) return false;
  }
  return true;
}

std::string acronym(std::string_view name) {
  std::string out;
  for (const auto& w : text::split(name, ' ')) {
    if (!w.empty()) out.push_back(w[0]);
  }
  return out;
}

DateTime day_start(Date d) { return DateTime{std::chrono::sys_seconds(d)}; }

std::size_t weighted_site(Rng& rng, const std::vector<SiteProfile>& sites,
                          const std::vector<std::size_t>& pool) {
  std::vector<double> w;
  w.reserve(pool.size());
  for (auto i : pool) w.push_back(sites[i].publication_rate);
  return pool[rng.weighted_index(w)];
}

}  // namespace

// ---------------------------------------------------------------- credibility

double credibility_in_band(Rng& rng, bool low) {
  return low ? rng.uniform(0.1, 0.4) : rng.uniform(0.6, 0.9);
}

double assign_credibility(Rng& rng, double low_cred_fraction) {
  if (!(low_cred_fraction >= 0.0 && low_cred_fraction <= 1.0)) {
    throw invalid_argument("low_cred_fraction must lie in [0, 1]");
  }
  const bool low = rng.uniform() < low_cred_fraction;
  return credibility_in_band(rng, low);
}

// --------------------------------------------------------------------- sites

std::vector<SiteProfile> generate_sites(const WorldConfig& config, ContentRealizer& realizer,
                                        Rng& rng) {
  const int n = config.n_sites;
  const int n_low = static_cast<int>(std::lround(config.low_cred_fraction * n));

  std::vector<double> weights;
  for (auto t : kAllSiteTypes) {
    auto it = config.site_type_weights.find(t);
    weights.push_back(it == config.site_type_weights.end() ? 0.0 : it->second);
  }
  const auto counts = apportion(n, weights);
  std::vector<SiteType> types;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    types.insert(types.end(), static_cast<std::size_t>(counts[i]), kAllSiteTypes[i]);
  }
  rng.shuffle(types);

  std::vector<bool> low(static_cast<std::size_t>(n), false);
  std::fill(low.begin(), low.begin() + n_low, true);
  rng.shuffle(low);

  std::set<std::string> domains;
  std::vector<SiteProfile> sites;
  sites.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    SiteProfile s;
    char id[16];
    std::snprintf(id, sizeof id, "site-%03d", i);
    s.site_id = id;
    s.site_type = types[static_cast<std::size_t>(i)];
    Rng srng = rng.fork(s.site_id);
    SiteSurface surface = realizer.site_surface(s.site_type, srng);
    for (int attempt = 0; domains.count(surface.domain_name) && attempt < 50; ++attempt) {
      surface = realizer.site_surface(s.site_type, srng);
    }
    if (domains.count(surface.domain_name)) {
      const auto dot = surface.domain_name.find('.');
      surface.domain_name.insert(dot == std::string::npos ? surface.domain_name.size() : dot,
                                 std::to_string(i));
    }
    domains.insert(surface.domain_name);
    s.domain_name = surface.domain_name;
    s.style = surface.style;
    s.credibility = round_to(credibility_in_band(srng, low[static_cast<std::size_t>(i)]), 4);
    s.political_bias = round_to(srng.uniform(-1.0, 1.0), 4);
    // Independent of credibility: drawn from its own stream.
    Rng prng = rng.fork(s.site_id + "/rate");
    s.publication_rate = round_to(std::exp(prng.normal(0.5, 0.6)), 4);
    sites.push_back(std::move(s));
  }
  return sites;
}

// ------------------------------------------------------------------ clusters

std::vector<TopicCluster> generate_topic_clusters(Rng& rng,
                                                  const std::vector<std::string>& taxonomy,
                                                  ContentRealizer& realizer,
                                                  const WorldConfig& config) {
  if (taxonomy.empty()) throw invalid_argument("taxonomy must not be empty");
  const auto& aliases_for_check = eval::AliasTable::with_default_units();
  const auto span_days = (config.timeline_end - config.timeline_start).count();
  const auto event_window = std::max<std::int64_t>(5, span_days * 8 / 10);

  std::set<std::string> reserved;
  std::vector<TopicCluster> clusters;
  for (std::size_t ti = 0; ti < taxonomy.size(); ++ti) {
    TopicCluster c;
    char id[8];
    std::snprintf(id, sizeof id, "t%02zu", ti);
    c.topic_id = id;
    Rng crng = rng.fork("cluster/" + c.topic_id);
    Rng drng = crng.fork("draft");
    TopicDraft d = realizer.expand_topic(taxonomy[ti], reserved, drng);
    if (d.entities.empty() || d.attributes.empty() || d.events.size() < 3 ||
        d.narratives.size() < 2) {
      throw Error(ErrorCode::kGeneration, "realizer produced too little content for " + d.name);
    }
    c.name = d.name;
    const auto n_sub = static_cast<std::size_t>(
        crng.between(config.subtopics_per_topic.min, config.subtopics_per_topic.max));
    c.subtopics.assign(d.subtopics.begin(),
                       d.subtopics.begin() + static_cast<std::ptrdiff_t>(std::min(n_sub, d.subtopics.size())));
    c.entities = d.entities;
    for (const auto& e : c.entities) reserved.insert(first_word(e));
    c.controversy_level = d.controversy_level;
    c.narratives = d.narratives;

    int fact_no = 0;
    auto next_fact_id = [&] {
      char buf[16];
      std::snprintf(buf, sizeof buf, "%s-f%02d", c.topic_id.c_str(), fact_no++);
      return std::string(buf);
    };

    for (const auto& a : d.attributes) {
      c.attributes.push_back({a.name, a.unit});
      std::vector<double> vals;
      for (const auto& entity : c.entities) {
        double v = round_to(crng.uniform(a.lo, a.hi), a.decimals);
        for (int attempt = 0; attempt < 500 && !values_separated(vals, v); ++attempt) {
          v = round_to(crng.uniform(a.lo, a.hi), a.decimals);
        }
        if (!values_separated(vals, v)) {
          throw Error(ErrorCode::kGeneration, "could not separate values for " + a.name);
        }
        vals.push_back(v);
        Fact f;
        f.fact_id = next_fact_id();
        f.subject = entity;
        f.attribute = a.name;
        f.value = FactValue{FactValue::Kind::kQuantity, v, a.decimals, a.unit, {}, {}};
        f.statement = phrasing::quantity_sentence("", a.name, entity, "stood at", f.value->render());
        c.key_facts.push_back(std::move(f));
      }
    }

    // Timeline: distinct days in the first 80% of the span, increasing.
    std::vector<EventDraft> events = d.events;
    crng.shuffle(events);
    std::set<std::int64_t> offsets;
    while (offsets.size() < events.size()) {
      offsets.insert(crng.between(0, event_window - 1));
    }
    auto off = offsets.begin();
    for (const auto& e : events) {
      TimelineEvent te;
      te.date = config.timeline_start + std::chrono::days(*off++);
      te.key = e.key;
      te.text = e.text;
      Fact f;
      f.fact_id = next_fact_id();
      f.subject = e.key;
      f.attribute = "date";
      f.value = FactValue{FactValue::Kind::kDate, 0.0, 0, {}, te.date, {}};
      f.statement = phrasing::event_sentence(e.key, "took place", te.date);
      te.fact_id = f.fact_id;
      c.key_facts.push_back(std::move(f));
      c.timeline.push_back(std::move(te));
    }

    // Misinformation claims against distinct quantity facts.
    std::vector<std::size_t> quantity_idx;
    for (std::size_t i = 0; i < c.key_facts.size(); ++i) {
      if (c.key_facts[i].value && c.key_facts[i].value->kind == FactValue::Kind::kQuantity) {
        quantity_idx.push_back(i);
      }
    }
    crng.shuffle(quantity_idx);
    const auto n_claims = std::min<std::size_t>(quantity_idx.size(), 2 + crng.below(2));
    for (std::size_t m = 0; m < n_claims; ++m) {
      const Fact& fact = c.key_facts[quantity_idx[m]];
      Rng mrng = crng.fork("claim/" + fact.fact_id);
      bool ok = false;
      for (int attempt = 0; attempt < kClaimRetries && !ok; ++attempt) {
        ClaimDraft draft = realizer.fabricate_claim(c, fact, mrng);
        const auto truth = eval::normalize_answer(fact.value->render(), aliases_for_check);
        const auto lie = eval::normalize_answer(draft.false_value.render(), aliases_for_check);
        if (truth == lie || eval::normalize_answer(draft.statement, aliases_for_check) ==
                                eval::normalize_answer(fact.statement, aliases_for_check)) {
          continue;
        }
        MisinfoClaim claim;
        claim.claim_id = c.topic_id + "-m" + std::to_string(m);
        claim.contradicts_fact_id = fact.fact_id;
        claim.statement = std::move(draft.statement);
        claim.fabricated_entities = std::move(draft.fabricated_entities);
        claim.false_value = draft.false_value;
        c.misinfo_claims.push_back(std::move(claim));
        ok = true;
      }
      if (!ok) {
        throw Error(ErrorCode::kGeneration,
                    "realizer kept producing claims identical to fact " + fact.fact_id);
      }
    }
    if (c.misinfo_claims.empty()) {
      throw Error(ErrorCode::kGeneration, "cluster " + c.topic_id + " has no quantity facts");
    }
    clusters.push_back(std::move(c));
  }
  return clusters;
}

// ------------------------------------------------------------------ articles

std::vector<Article> realize_articles(const TopicCluster& cluster,
                                      const std::vector<SiteProfile>& sites, Rng& rng,
                                      const WorldConfig& config, ContentRealizer& realizer) {
  if (sites.empty()) throw invalid_argument("realize_articles needs at least one site");
  std::vector<const Fact*> quantity;
  for (const auto& f : cluster.key_facts) {
    if (f.value && f.value->kind == FactValue::Kind::kQuantity) quantity.push_back(&f);
  }
  if (cluster.key_facts.empty()) {
    throw Error(ErrorCode::kGeneration, "cluster " + cluster.topic_id + " has no content");
  }

  std::vector<std::size_t> low_pool, high_pool, all_pool;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    all_pool.push_back(i);
    (sites[i].low_credibility() ? low_pool : high_pool).push_back(i);
  }

  const int n = static_cast<int>(
      rng.between(config.articles_per_cluster.min, config.articles_per_cluster.max));
  int n_misinfo = 0;
  if (!low_pool.empty() && !cluster.misinfo_claims.empty()) {
    n_misinfo = static_cast<int>(std::lround(config.misinfo_article_rate * n));
    n_misinfo = std::min(n_misinfo, std::max(0, n - 1));
  }
  const int n_organic = n - n_misinfo;
  auto shares = apportion(n_organic, {kKindShares[0], kKindShares[1], kKindShares[2],
                                      1.0 - kKindShares[0] - kKindShares[1] - kKindShares[2]});
  if (quantity.empty()) {
    // Nothing to round up or profile; everything becomes recaps and commentary.
    shares[3] += shares[0] + shares[1];
    shares[0] = shares[1] = 0;
  }
  if (cluster.timeline.empty()) {
    shares[3] += shares[2];
    shares[2] = 0;
  }

  struct Plan {
    ArticleKind kind;
    std::string focus;
    DateTime timestamp;
    std::size_t site = 0;
    const MisinfoClaim* claim = nullptr;
  };
  std::vector<Plan> plans;
  const auto span_s = std::chrono::duration_cast<std::chrono::seconds>(
                          day_start(config.timeline_end) - day_start(config.timeline_start))
                          .count();
  auto stamp = [&](double lo_frac) {
    const auto lo = static_cast<std::int64_t>(std::floor(lo_frac * static_cast<double>(span_s)));
    return day_start(config.timeline_start) + std::chrono::seconds(rng.between(lo, span_s - 1));
  };

  std::vector<std::string> attr_order;
  for (const auto& a : cluster.attributes) attr_order.push_back(a.name);
  std::vector<std::string> entity_order = cluster.entities;
  rng.shuffle(attr_order);
  rng.shuffle(entity_order);

  for (int i = 0; i < shares[0]; ++i) {
    plans.push_back({ArticleKind::kRoundup, attr_order[static_cast<std::size_t>(i) % attr_order.size()],
                     stamp(0.0)});
  }
  for (int i = 0; i < shares[1]; ++i) {
    plans.push_back({ArticleKind::kProfile,
                     entity_order[static_cast<std::size_t>(i) % entity_order.size()], stamp(0.0)});
  }
  for (int i = 0; i < shares[2]; ++i) plans.push_back({ArticleKind::kTimelineRecap, "", stamp(0.8)});
  for (int i = 0; i < shares[3]; ++i) plans.push_back({ArticleKind::kCommentary, "", stamp(0.0)});
  for (int i = 0; i < n_misinfo; ++i) {
    Plan p{ArticleKind::kMisinfo, "", stamp(0.0)};
    p.claim = &cluster.misinfo_claims[rng.below(cluster.misinfo_claims.size())];
    plans.push_back(p);
  }

  // Site allocation.
  for (auto& p : plans) {
    if (p.kind == ArticleKind::kMisinfo) {
      const bool to_low = high_pool.empty() || rng.bernoulli(config.misinfo_low_cred_share);
      p.site = weighted_site(rng, sites, to_low ? low_pool : high_pool);
    } else {
      p.site = weighted_site(rng, sites, all_pool);
    }
  }
  // Enforce a strictly higher misinformation share on low-credibility sites.
  if (n_misinfo > 0 && !high_pool.empty()) {
    for (;;) {
      double low_total = 0, low_mis = 0, high_total = 0, high_mis = 0;
      for (const auto& p : plans) {
        const bool low = sites[p.site].low_credibility();
        const bool mis = p.kind == ArticleKind::kMisinfo;
        (low ? low_total : high_total) += 1;
        (low ? low_mis : high_mis) += mis ? 1 : 0;
      }
      const double lp = low_total > 0 ? low_mis / low_total : 0.0;
      const double hp = high_total > 0 ? high_mis / high_total : 0.0;
      if (lp > hp || high_mis == 0) break;
      for (auto& p : plans) {
        if (p.kind == ArticleKind::kMisinfo && !sites[p.site].low_credibility()) {
          p.site = weighted_site(rng, sites, low_pool);
          break;
        }
      }
    }
  }

  std::stable_sort(plans.begin(), plans.end(),
                   [](const Plan& a, const Plan& b) { return a.timestamp < b.timestamp; });

  std::vector<Article> out;
  out.reserve(plans.size());
  for (std::size_t i = 0; i < plans.size(); ++i) {
    const Plan& p = plans[i];
    Rng arng = rng.fork("article/" + std::to_string(i));
    ArticlePlan ap;
    ap.kind = p.kind;
    ap.cluster = &cluster;
    ap.site = &sites[p.site];
    ap.focus = p.focus;
    ap.target_length = std::max(
        50, static_cast<int>(std::lround(arng.normal(config.target_article_length,
                                                     0.06 * config.target_article_length))));
    Article a;
    a.site_id = sites[p.site].site_id;
    a.topic_id = cluster.topic_id;
    a.timestamp = p.timestamp;
    a.article_id = hex64(derive_seed(rng.seed(), "id/" + cluster.topic_id + "/" + std::to_string(i)));

    switch (p.kind) {
      case ArticleKind::kRoundup:
        for (const Fact* f : quantity) {
          if (f->attribute == p.focus) ap.facts.push_back(f);
        }
        arng.shuffle(ap.facts);
        break;
      case ArticleKind::kProfile: {
        for (const Fact* f : quantity) {
          if (f->subject == p.focus) ap.facts.push_back(f);
        }
        arng.shuffle(ap.facts);
        const std::string prefix = first_word(p.focus) + " ";
        for (const auto& e : cluster.timeline) {
          if (e.key.rfind(prefix, 0) == 0 && day_start(e.date) <= p.timestamp) ap.events.push_back(&e);
        }
        break;
      }
      case ArticleKind::kTimelineRecap:
        for (const auto& e : cluster.timeline) ap.events.push_back(&e);
        break;
      case ArticleKind::kCommentary: {
        std::vector<const Narrative*> narr;
        for (const auto& nv : cluster.narratives) narr.push_back(&nv);
        arng.shuffle(narr);
        ap.narratives.assign(narr.begin(), narr.begin() + static_cast<std::ptrdiff_t>(
                                                              std::min<std::size_t>(narr.size(), 1 + arng.below(2))));
        if (!quantity.empty()) {
          std::vector<const Fact*> pool = quantity;
          arng.shuffle(pool);
          ap.facts.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(
                                                           std::min<std::size_t>(pool.size(), 1 + arng.below(2))));
        }
        break;
      }
      case ArticleKind::kMisinfo:
        ap.claims.push_back(p.claim);
        if (!cluster.narratives.empty()) {
          ap.narratives.push_back(&cluster.narratives[arng.below(cluster.narratives.size())]);
        }
        break;
    }

    // Citations: up to three strictly earlier articles of this cluster.
    std::vector<std::size_t> earlier;
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (out[j].timestamp < a.timestamp) earlier.push_back(j);
    }
    if (!earlier.empty()) {
      arng.shuffle(earlier);
      const auto n_cite = std::min<std::size_t>(earlier.size(), arng.below(4));
      for (std::size_t k = 0; k < n_cite; ++k) {
        const Article& cited = out[earlier[k]];
        a.citations.push_back(cited.article_id);
        for (const auto& s : sites) {
          if (s.site_id == cited.site_id) ap.cited.push_back({s.domain_name, cited.title});
        }
      }
    }

    RealizedArticle r = realizer.realize_article(ap, arng);
    a.title = std::move(r.title);
    a.body = std::move(r.body);
    for (const Fact* f : ap.facts) a.carries_claims.push_back(f->fact_id);
    for (const TimelineEvent* e : ap.events) a.carries_claims.push_back(e->fact_id);
    for (const MisinfoClaim* m : ap.claims) a.carries_claims.push_back(m->claim_id);
    out.push_back(std::move(a));
  }
  return out;
}

// --------------------------------------------------------------------- world

WorldBundle generate_world(const WorldConfig& config, ContentRealizer& realizer) {
  config.validate();
  WorldBundle w;
  w.config = config;
  w.realizer_id = realizer.id();
  w.generator_version = std::string(kGeneratorVersion);
  Rng root(config.seed);

  std::string stage = "sites";
  auto provenance = [&] {
    return json{{"seed", config.seed},
                {"generator_version", w.generator_version},
                {"realizer_id", w.realizer_id},
                {"stage", stage},
                {"sites_done", w.sites.size()},
                {"clusters_done", w.clusters.size()},
                {"articles_done", w.articles.size()}};
  };

  try {
    Rng site_rng = root.fork("sites");
    w.sites = generate_sites(config, realizer, site_rng);

    stage = "clusters";
    std::vector<std::string> taxonomy =
        config.taxonomy.empty() ? realizer.default_taxonomy() : config.taxonomy;
    if (static_cast<std::size_t>(config.n_topics) > taxonomy.size()) {
      throw invalid_argument("n_topics exceeds the taxonomy size (" +
                             std::to_string(taxonomy.size()) + ")");
    }
    taxonomy.resize(static_cast<std::size_t>(config.n_topics));
    Rng cluster_rng = root.fork("clusters");
    w.clusters = generate_topic_clusters(cluster_rng, taxonomy, realizer, config);

    Rng bias_rng = root.fork("topic-bias");
    for (auto& s : w.sites) {
      for (const auto& c : w.clusters) {
        s.topic_biases[c.topic_id] = round_to(bias_rng.uniform(-1.0, 1.0), 4);
      }
    }

    stage = "articles";
    for (const auto& c : w.clusters) {
      Rng arng = root.fork("articles/" + c.topic_id);
      auto arts = realize_articles(c, w.sites, arng, config, realizer);
      std::move(arts.begin(), arts.end(), std::back_inserter(w.articles));
    }
  } catch (const GenerationError&) {
    throw;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidArgument) throw;
    throw GenerationError(e.what(), provenance());
  } catch (const std::exception& e) {
    throw GenerationError(std::string("realizer failure: ") + e.what(), provenance());
  }

  // Acronym aliases, only where the acronym is unambiguous across the world.
  w.aliases = eval::AliasTable::with_default_units();
  std::map<std::string, std::vector<std::string>> by_acronym;
  for (const auto& c : w.clusters) {
    for (const auto& e : c.entities) by_acronym[acronym(e)].push_back(e);
  }
  for (const auto& [acr, names] : by_acronym) {
    if (names.size() == 1 && acr.size() >= 2) w.aliases.add_alias(names.front(), acr);
  }

  w.reindex();
  w.world_id = compute_world_id(w);
  return w;
}

// --------------------------------------------------------------------- stats

json ContentStats::to_json() const {
  json pct = json::object();
  for (const auto& [t, v] : site_type_pct) pct[std::string(worldgen::to_string(t))] = v;
  return json{{"sites", sites},
              {"articles", articles},
              {"mean_length", mean_length},
              {"mean_ttr", mean_ttr},
              {"low_cred_fraction", low_cred_fraction},
              {"site_type_pct", pct}};
}

ContentStats content_stats(const WorldBundle& world) {
  if (world.articles.empty()) throw invalid_argument("content_stats on an empty world");
  ContentStats s;
  s.sites = world.sites.size();
  s.articles = world.articles.size();
  double len = 0.0, ttr = 0.0;
  for (const auto& a : world.articles) {
    len += static_cast<double>(text::token_count(a.body));
    ttr += text::type_token_ratio(a.body);
  }
  s.mean_length = len / static_cast<double>(s.articles);
  s.mean_ttr = ttr / static_cast<double>(s.articles);
  for (auto t : kAllSiteTypes) s.site_type_pct[t] = 0.0;
  std::size_t low = 0;
  for (const auto& site : world.sites) {
    s.site_type_pct[site.site_type] += 1.0;
    if (site.low_credibility()) ++low;
  }
  if (s.sites > 0) {
    for (auto& [t, v] : s.site_type_pct) v = 100.0 * v / static_cast<double>(s.sites);
    s.low_cred_fraction = static_cast<double>(low) / static_cast<double>(s.sites);
  }
  return s;
}

// ----------------------------------------------------------------- bundle IO

void save_world(const WorldBundle& world, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  json doc = world_document(world);
  doc["world_id"] = world.world_id;
  write_json_file(dir / "world.json", doc);
  std::vector<json> rows;
  rows.reserve(world.articles.size());
  for (const auto& a : world.articles) rows.push_back(to_json(a));
  write_jsonl_file(dir / "articles.jsonl", rows);
  write_json_file(dir / "aliases.json", world.aliases.to_json());
  write_file_atomic(dir / "MANIFEST", "schema=" + std::string(kWorldSchema) +
                                          "\ngenerator_version=" + world.generator_version +
                                          "\nrealizer_id=" + world.realizer_id +
                                          "\nworld_id=" + world.world_id + "\n");
}

WorldBundle load_world(const std::filesystem::path& dir, bool verify_id) {
  const json doc = read_json_file(dir / "world.json");
  require_schema(doc, kWorldSchema, (dir / "world.json").string());
  WorldBundle w;
  try {
    w.world_id = doc.at("world_id").get<std::string>();
    w.generator_version = doc.at("generator_version").get<std::string>();
    w.realizer_id = doc.at("realizer_id").get<std::string>();
    w.config = WorldConfig::from_json(doc.at("config"));
    for (const auto& s : doc.at("sites")) w.sites.push_back(site_from_json(s));
    for (const auto& c : doc.at("clusters")) w.clusters.push_back(cluster_from_json(c));
    for (const auto& a : read_jsonl_file(dir / "articles.jsonl")) {
      w.articles.push_back(article_from_json(a));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchema, "malformed world bundle in " + dir.string() + ": " + e.what());
  }
  const auto alias_path = dir / "aliases.json";
  w.aliases = std::filesystem::exists(alias_path)
                  ? eval::AliasTable::from_json(read_json_file(alias_path))
                  : eval::AliasTable::with_default_units();
  w.reindex();
  if (verify_id && compute_world_id(w) != w.world_id) {
    throw Error(ErrorCode::kSchema, "world content in " + dir.string() +
                                        " does not match its world_id " + w.world_id);
  }
  return w;
}

// ---------------------------------------------------------------- validation

std::vector<Finding> validate_world(const WorldBundle& w) {
  std::vector<Finding> out;
  auto add = [&](std::string code, std::string subject, std::string msg) {
    out.push_back({std::move(code), std::move(subject), std::move(msg)});
  };

  if (compute_world_id(w) != w.world_id) {
    add("world_id_mismatch", w.world_id, "content digest differs from the recorded world_id");
  }
  std::set<std::string> site_ids;
  for (const auto& s : w.sites) {
    if (!site_ids.insert(s.site_id).second) add("duplicate_site", s.site_id, "site id repeats");
    const bool ok = (s.credibility >= 0.1 && s.credibility <= 0.4) ||
                    (s.credibility >= 0.6 && s.credibility <= 0.9);
    if (!ok) add("credibility_band", s.site_id, "credibility outside [0.1,0.4] and [0.6,0.9]");
  }

  const auto& aliases = w.aliases;
  std::set<std::string> fact_ids;
  for (const auto& c : w.clusters) {
    for (std::size_t i = 1; i < c.timeline.size(); ++i) {
      if (!(c.timeline[i - 1].date < c.timeline[i].date)) {
        add("timeline_order", c.topic_id, "timeline dates are not strictly increasing");
      }
    }
    for (const auto& f : c.key_facts) {
      if (!fact_ids.insert(f.fact_id).second) add("duplicate_fact", f.fact_id, "fact id repeats");
    }
    if (c.timeline.size() < 3) add("cluster_minimum", c.topic_id, "fewer than 3 timeline events");
    if (c.key_facts.size() < 3) add("cluster_minimum", c.topic_id, "fewer than 3 key facts");
    if (c.narratives.size() < 2) add("cluster_minimum", c.topic_id, "fewer than 2 narratives");
    if (c.misinfo_claims.empty()) add("cluster_minimum", c.topic_id, "no misinformation claims");
    for (const auto& m : c.misinfo_claims) {
      const Fact* f = c.find_fact(m.contradicts_fact_id);
      if (f == nullptr) {
        add("claim_link", m.claim_id, "contradicted fact " + m.contradicts_fact_id + " is missing");
        continue;
      }
      if (eval::normalize_answer(m.statement, aliases) ==
              eval::normalize_answer(f->statement, aliases) ||
          (f->value && eval::normalize_answer(m.false_value.render(), aliases) ==
                           eval::normalize_answer(f->value->render(), aliases))) {
        add("claim_equals_fact", m.claim_id, "claim does not differ from its fact");
      }
    }
  }

  std::map<std::string, const Article*> by_id;
  for (const auto& a : w.articles) {
    if (!by_id.emplace(a.article_id, &a).second) {
      add("duplicate_article", a.article_id, "article id repeats");
    }
  }
  std::size_t low_total = 0, low_mis = 0, high_total = 0, high_mis = 0;
  for (const auto& a : w.articles) {
    const SiteProfile* site = w.find_site(a.site_id);
    if (site == nullptr) add("dangling_site", a.article_id, "site " + a.site_id + " does not exist");
    if (w.find_cluster(a.topic_id) == nullptr) {
      add("dangling_topic", a.article_id, "topic " + a.topic_id + " does not exist");
    }
    if (a.is_honeypot) add("honeypot_in_world", a.article_id, "world articles are never honeypots");
    for (const auto& cid : a.citations) {
      auto it = by_id.find(cid);
      if (it == by_id.end()) {
        add("dangling_citation", a.article_id, "cites missing article " + cid);
      } else if (!(it->second->timestamp < a.timestamp)) {
        add("forward_citation", a.article_id, "cites article " + cid + " that is not earlier");
      }
    }
    bool mis = false;
    for (const auto& ref : a.carries_claims) {
      if (w.find_claim(ref) != nullptr) {
        mis = true;
      } else if (w.find_fact(ref) == nullptr) {
        add("dangling_claim", a.article_id, "carries unknown fact or claim " + ref);
      }
    }
    if (site != nullptr) {
      (site->low_credibility() ? low_total : high_total) += 1;
      if (mis) (site->low_credibility() ? low_mis : high_mis) += 1;
    }
  }
  if (high_mis > 0 && low_total > 0 && high_total > 0) {
    const double lp = static_cast<double>(low_mis) / static_cast<double>(low_total);
    const double hp = static_cast<double>(high_mis) / static_cast<double>(high_total);
    if (!(lp > hp)) {
      add("misinfo_allocation", w.world_id,
          "low-credibility sites do not carry a higher misinformation share");
    }
  }
  return out;
}

}  // namespace synthweb::worldgen
