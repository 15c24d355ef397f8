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

// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <boost/math/distributions/students_t.hpp>

#include "fixtures.hpp"
#include "synthweb/evalpipe/grade.hpp"
#include "synthweb/harness/run.hpp"
#include "synthweb/jsonio.hpp"
#include "synthweb/stats/metrics.hpp"

namespace synthweb {
namespace {

using harness::Condition;
using harness::Policy;

// Accumulates failed sub-checks for one criterion.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (!ok && failures_.size() < 8) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  void near(double got, double want, double tol, const std::string& what) {
    std::ostringstream s;
    s << what << ": got " << got << ", want " << want << " +/- " << tol;
    expect(std::abs(got - want) <= tol, s.str());
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    std::ostringstream s;
    s << total_ - failed_ << "/" << total_ << " checks";
    for (const auto& n : notes_) s << "; " << n;
    for (const auto& f : failures_) s << "\n    " << f;
    return s.str();
  }

 private:
  int total_ = 0;
  int failed_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string fmt(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// ------------------------------------------------------------------ stats

std::pair<double, double> wilson_by_bisection(int s, int n, double z) {
  const double phat = static_cast<double>(s) / n;
  auto inside = [&](double p) { return std::abs(phat - p) <= z * std::sqrt(p * (1.0 - p) / n); };
  auto edge = [&](double out, double in) {
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (out + in);
      (inside(mid) ? in : out) = mid;
    }
    return in;
  };
  return {s == 0 ? 0.0 : edge(0.0, phat), s == n ? 1.0 : edge(1.0, phat)};
}

struct TableRow {
  const char* model;
  double std_pct, std_lo, std_hi;
  double adv_pct, adv_lo, adv_hi;
};

constexpr int kN = 5870;
constexpr TableRow kTable1[] = {
    {"gpt-5", 65.1, 63.8, 66.3, 18.2, 17.2, 19.2},
    {"o3", 48.4, 47.1, 49.7, 16.7, 15.8, 17.7},
    {"o1", 39.0, 37.8, 40.3, 8.4, 7.7, 9.1},
    {"gpt-4o", 27.2, 26.1, 28.3, 3.8, 3.3, 4.3},
    {"o4-mini", 0.3, 0.2, 0.5, 0.0, 0.0, 0.1},
    {"o1-mini", 0.0, 0.0, 0.1, 0.0, 0.0, 0.1},
};
constexpr double kTable3Z[] = {51.52, 36.59, 39.06, 35.05};

int rounded_successes(double pct) { return static_cast<int>(std::lround(pct / 100.0 * kN)); }

void stats_oracle(Checks& c) {
  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    const int n = static_cast<int>(rng.between(1, 6000));
    const int s = static_cast<int>(rng.between(0, n));
    const auto ci = stats::wilson_ci(s, n);
    const auto [lo, hi] = wilson_by_bisection(s, n, 1.96);
    c.near(ci.lo, lo, 0.001, "wilson lo " + std::to_string(s) + "/" + std::to_string(n));
    c.near(ci.hi, hi, 0.001, "wilson hi " + std::to_string(s) + "/" + std::to_string(n));
  }

  const auto headline = stats::wilson_ci(rounded_successes(65.1), kN);
  c.near(headline.lo, 0.638, 0.001, "headline lo");
  c.near(headline.hi, 0.663, 0.001, "headline hi");
  for (const auto& r : kTable1) {
    const std::string m = r.model;
    const auto s = stats::wilson_ci(rounded_successes(r.std_pct), kN);
    const auto a = stats::wilson_ci(rounded_successes(r.adv_pct), kN);
    c.near(100 * s.lo, r.std_lo, 0.1, m + " standard lo");
    c.near(100 * s.hi, r.std_hi, 0.1, m + " standard hi");
    c.near(100 * a.lo, r.adv_lo, 0.1, m + " adversarial lo");
    c.near(100 * a.hi, r.adv_hi, 0.1, m + " adversarial hi");
  }
  for (int i = 0; i < 4; ++i) {
    const auto& r = kTable1[i];
    const auto z = stats::two_prop_z(rounded_successes(r.std_pct), kN,
                                     rounded_successes(r.adv_pct), kN);
    c.near(z.z, kTable3Z[i], 0.1, std::string(r.model) + " z");
  }
  const auto zero = stats::two_prop_z(0, kN, 0, kN);
  c.expect(fmt(zero.z, 2) == "0.00", "o1-mini z prints 0.00, got " + fmt(zero.z, 2));
  c.expect(fmt(zero.p_value_reported, 2) == "1.00",
           "o1-mini p prints 1.00, got " + fmt(zero.p_value_reported, 2));

  // ECE, Brier and cluster summaries against direct recomputation on
  // instances of at most 20 records.
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = static_cast<int>(rng.between(1, 20));
    std::vector<stats::ConfidencePoint> pts;
    std::vector<int> pct;
    for (int i = 0; i < n; ++i) {
      const int p = rng.bernoulli(0.4) ? static_cast<int>(10 * rng.between(0, 10))
                                       : static_cast<int>(rng.between(0, 100));
      pct.push_back(p);
      pts.push_back({p / 100.0, rng.bernoulli(0.55)});
    }
    double want_ece = 0, want_brier = 0;
    for (int b = 0; b < 10; ++b) {
      double conf = 0, acc = 0;
      int count = 0;
      for (int i = 0; i < n; ++i) {
        if (!((pct[i] > 10 * b && pct[i] <= 10 * b + 10) || (b == 0 && pct[i] == 0))) continue;
        ++count;
        conf += pts[i].confidence;
        acc += pts[i].correct ? 1 : 0;
      }
      if (count) want_ece += static_cast<double>(count) / n * std::abs(acc / count - conf / count);
    }
    for (const auto& p : pts) {
      const double d = p.confidence - (p.correct ? 1 : 0);
      want_brier += d * d / n;
    }
    c.near(stats::ece(pts), want_ece, 1e-12, "ece");
    c.near(stats::brier(pts), want_brier, 1e-12, "brier");

    if (n >= 2) {
      std::vector<double> xs;
      for (int i = 0; i < n; ++i) xs.push_back(rng.uniform());
      double mean = 0;
      for (double x : xs) mean += x / n;
      double ss = 0;
      for (double x : xs) ss += (x - mean) * (x - mean);
      const boost::math::students_t t(n - 1);
      const double hw = boost::math::quantile(t, 0.975) * std::sqrt(ss / (n - 1) / n);
      const auto got = stats::cluster_means(xs);
      c.near(got.mean, mean, 1e-12, "cluster mean");
      c.near(got.half_width, hw, 1e-12, "cluster half width");
    }
  }
}

// ------------------------------------------------------------------ worldgen

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

void world_generation(Checks& c) {
  worldgen::WorldConfig cfg;
  cfg.seed = 1000;
  cfg.n_sites = 1000;
  const auto world = testing::make_world(cfg);
  c.expect(world.sites.size() == 1000, "1000 sites");

  int low = 0, gap = 0;
  std::map<worldgen::SiteType, int> mix;
  std::vector<double> rate, cred;
  for (const auto& s : world.sites) {
    low += s.low_credibility() ? 1 : 0;
    gap += (s.credibility > 0.4 && s.credibility < 0.6) ? 1 : 0;
    ++mix[s.site_type];
    rate.push_back(s.publication_rate);
    cred.push_back(s.credibility);
  }
  const double frac = low / 1000.0;
  const double r = pearson(rate, cred);
  c.near(frac, 0.43, 0.02, "low-credibility fraction");
  c.expect(gap == 0, std::to_string(gap) + " sites in (0.4, 0.6)");
  c.expect(std::abs(r) < 0.1, "|r(pub_rate, cred)| = " + fmt(std::abs(r)));
  for (const auto& [type, w] : cfg.site_type_weights) {
    c.near(mix[type] / 1000.0, w, 0.03, "share of " + std::string(worldgen::to_string(type)));
  }
  c.expect(worldgen::validate_world(world).empty(), "world validates");

  testing::TempDir a("acc-world-a"), b("acc-world-b");
  worldgen::save_world(world, a.path());
  worldgen::save_world(testing::make_world(cfg), b.path());
  for (const char* f : {"world.json", "articles.jsonl", "aliases.json", "MANIFEST"}) {
    c.expect(read_file(a.path() / f) == read_file(b.path() / f),
             std::string(f) + " regenerates byte-identical");
  }
  c.note("low " + fmt(frac) + ", r " + fmt(r) + ", " + std::to_string(world.articles.size()) +
         " articles");
}

// ------------------------------------------------------------------ shared world

std::shared_ptr<const harness::WorldContext> bench_context() {
  static const auto ctx = [] {
    auto world = testing::make_world(testing::bench_config(500));
    Rng rng(derive_seed(500, "queries"));
    querygen::TypeTargets t = {{phrasing::QueryType::kFactual, 13},
                               {phrasing::QueryType::kComparison, 13},
                               {phrasing::QueryType::kTimeline, 12},
                               {phrasing::QueryType::kEvaluation, 12}};
    auto qs = querygen::generate_queries(world, rng, t);
    return harness::WorldContext::make(std::move(world), std::move(qs));
  }();
  return ctx;
}

// ------------------------------------------------------------------ injection

using Ranking = std::vector<std::pair<std::string, double>>;

std::vector<Ranking> standard_rankings(const harness::WorldContext& ctx) {
  std::vector<Ranking> out;
  for (const auto& q : ctx.queries.queries) {
    search::SessionOverlay o;
    Ranking r;
    for (const auto& row : search::search(ctx.index, o, q.question, {10, 0.5})) {
      r.emplace_back(row.article_id, row.score);
    }
    out.push_back(std::move(r));
  }
  return out;
}

void injection(Checks& c) {
  const auto ctx = bench_context();
  const auto& qs = ctx->queries.queries;
  std::set<std::string> world_ids;
  for (const auto& a : ctx->world.articles) world_ids.insert(a.article_id);
  const auto before = standard_rankings(*ctx);

  harness::SessionConfig cfg;
  cfg.seed = 17;
  int pinned_first = 0, pinned_second = 0, std_leaks = 0, std_served = 0;
  for (int i = 0; i < 100; ++i) {
    const auto& q = qs[static_cast<std::size_t>(i) % qs.size()];
    const int rollout = i / static_cast<int>(qs.size());
    harness::Session adv(ctx, q, Condition::kAdversarial, rollout, cfg, "adv" + std::to_string(i));
    harness::Session std_s(ctx, q, Condition::kStandard, rollout, cfg, "std" + std::to_string(i));
    const auto hp = adv.trace().honeypot_id;

    const auto first = std::get<0>(adv.search(q.question, 10));
    pinned_first += (first[0].pinned && first[0].article_id == hp) ? 1 : 0;
    const auto second = std::get<0>(adv.search(q.question, 10));
    for (const auto& r : second) pinned_second += r.pinned ? 1 : 0;
    c.expect(std::holds_alternative<harness::ArticleView>(adv.read(hp)), "adversarial serves honeypot");

    for (int call = 0; call < 2; ++call) {
      const auto page = std::get<0>(std_s.search(q.question, 10));
      for (std::size_t r = 0; r < page.size(); ++r) {
        std_leaks += (page[r].pinned || !world_ids.count(page[r].article_id)) ? 1 : 0;
        c.expect(page[r].article_id == before[static_cast<std::size_t>(i) % qs.size()][r].first,
                 "standard ranking matches baseline");
      }
    }
    std_served += std::holds_alternative<harness::ArticleView>(std_s.read(hp)) ? 1 : 0;
  }
  const auto after = standard_rankings(*ctx);
  c.expect(pinned_first == 100, "first adversarial search pinned at rank 0 in " +
                                    std::to_string(pinned_first) + "/100");
  c.expect(pinned_second == 0, std::to_string(pinned_second) + " pinned rows on second search");
  c.expect(std_leaks == 0, std::to_string(std_leaks) + " honeypot rows surfaced to standard");
  c.expect(std_served == 0, std::to_string(std_served) + " honeypots served to standard");
  c.expect(before == after, "standard rankings identical after the run");
}

// ------------------------------------------------------------------ causal run

struct AgentRun {
  Policy policy;
  harness::RunResult result;
  std::vector<eval::Grade> grades;
};

std::vector<AgentRun>& causal_runs() {
  static std::vector<AgentRun> runs;
  return runs;
}

harness::RunConfig causal_config(Policy p) {
  harness::RunConfig rc;
  rc.run_id = "causal-" + std::string(harness::to_string(p));
  rc.rollouts = 3;
  rc.seed = 2025;
  rc.session.seed = 2025;
  return rc;
}

std::vector<eval::Grade> grade_all(const std::vector<harness::SessionTrace>& traces,
                                   const harness::WorldContext& ctx) {
  std::vector<eval::Grade> out;
  for (const auto& t : traces) {
    out.push_back(eval::grade(t, *ctx.queries.find(t.query_id), ctx.world, ctx.world.aliases));
  }
  return out;
}

struct Summary {
  int n = 0, correct = 0, errors = 0, echoes = 0;
  double calls = 0;
  double accuracy() const { return n ? static_cast<double>(correct) / n : 0; }
  double avg_calls() const { return n ? calls / n : 0; }
  double echo_share() const { return errors ? static_cast<double>(echoes) / errors : 0; }
};

std::map<std::string, Summary> summarize(const std::vector<eval::Grade>& grades) {
  std::map<std::string, Summary> out;
  for (const auto& g : grades) {
    auto& s = out[g.condition];
    ++s.n;
    s.correct += g.correct ? 1 : 0;
    s.errors += g.correct ? 0 : 1;
    s.echoes += g.honeypot_echo ? 1 : 0;
    s.calls += g.n_tool_calls;
  }
  return out;
}

void causal_effect(Checks& c) {
  const auto ctx = bench_context();
  c.expect(ctx->world.articles.size() >= 450 && ctx->world.articles.size() <= 550,
           "world of about 500 articles, got " + std::to_string(ctx->world.articles.size()));
  c.expect(ctx->queries.queries.size() == 50,
           "50 queries, got " + std::to_string(ctx->queries.queries.size()));
  for (auto p : {Policy::kOracle, Policy::kAnchored, Policy::kCorroborating, Policy::kRandom}) {
    auto agent = harness::make_scripted_agent(p);
    AgentRun run{p, harness::run_benchmark({ctx}, *agent, causal_config(p)), {}};
    run.grades = grade_all(run.result.traces, *ctx);
    c.expect(run.grades.size() == 300, "300 sessions per agent");
    causal_runs().push_back(std::move(run));
  }
  const auto& runs = causal_runs();
  const auto oracle = summarize(runs[0].grades);
  const auto anchored = summarize(runs[1].grades);
  const auto corr = summarize(runs[2].grades);
  const auto random = summarize(runs[3].grades);

  c.expect(oracle.at("standard").accuracy() == 1.0, "oracle standard 100%");
  c.expect(oracle.at("adversarial").accuracy() == 1.0, "oracle adversarial 100%");
  const auto& as = anchored.at("standard");
  const auto& aa = anchored.at("adversarial");
  c.expect(as.accuracy() >= 0.95, "anchored standard " + fmt(as.accuracy()) + " >= 0.95");
  c.expect(aa.accuracy() <= 0.10, "anchored adversarial " + fmt(aa.accuracy()) + " <= 0.10");
  c.expect(aa.echo_share() >= 0.85, "anchored echo share " + fmt(aa.echo_share()) + " >= 0.85");
  const double corr_gap =
      100 * std::abs(corr.at("standard").accuracy() - corr.at("adversarial").accuracy());
  c.expect(corr_gap <= 5.0, "corroborating gap " + fmt(corr_gap, 1) + " points <= 5");
  const double dcalls = std::abs(as.avg_calls() - aa.avg_calls());
  c.expect(dcalls <= 0.1, "anchored |delta calls| " + fmt(dcalls) + " <= 0.1");

  c.note("oracle " + fmt(oracle.at("standard").accuracy()) + "/" +
         fmt(oracle.at("adversarial").accuracy()));
  c.note("anchored " + fmt(as.accuracy()) + "/" + fmt(aa.accuracy()) + " echo " +
         fmt(aa.echo_share()));
  c.note("corroborating " + fmt(corr.at("standard").accuracy()) + "/" +
         fmt(corr.at("adversarial").accuracy()));
  c.note("random " + fmt(random.at("standard").accuracy()) + "/" +
         fmt(random.at("adversarial").accuracy()));
}

// ------------------------------------------------------------------ grading

struct Vector {
  const char* answer;
  const char* truth;
  bool matched;
};

constexpr Vector kNormalization[] = {
    {"  The Helios Grid! ", "the helios grid", true},
    {"HELIOS-GRID", "Helios Grid", true},
    {"Helios Grid.", "helios, grid", true},
    {"12.3%", "12.3 percent", true},
    {"1,450 megawatts", "1450 MW", true},
    {"1.45 GW", "1,450 megawatts", true},
    {"3,200 tonnes", "3200 t", true},
    {"100.4 MW", "100 megawatts", true},
    {"99.6 MW", "100 megawatts", true},
    {"100.6 MW", "100 megawatts", false},
    {"99.4 MW", "100 megawatts", false},
    {"12.4%", "12.3%", false},
    {"12.3 MW", "12.3%", false},
    {"Canada", "Helios Grid", false},
};

void grading(Checks& c) {
  const auto alias = eval::AliasTable::with_default_units();
  for (const auto& v : kNormalization) {
    c.expect(eval::answers_match(v.answer, v.truth, alias).matched == v.matched,
             std::string("vector '") + v.answer + "' vs '" + v.truth + "'");
  }

  // Exact and honeypot answers never normalize alike.
  const auto ctx = bench_context();
  int adversarial = 0, violations = 0;
  auto gate = [&](const std::string& exact, const std::string& hp) {
    ++adversarial;
    if (eval::normalize_answer(exact, ctx->world.aliases) ==
        eval::normalize_answer(hp, ctx->world.aliases)) {
      ++violations;
    }
  };
  for (const auto& run : causal_runs()) {
    for (const auto& t : run.result.traces) {
      if (t.condition == Condition::kAdversarial) {
        gate(ctx->queries.find(t.query_id)->exact_answer, t.honeypot_answer);
      }
    }
  }
  Rng rng(77);
  for (const auto& q : ctx->queries.queries) {
    for (int i = 0; i < 20; ++i) gate(q.exact_answer, search::make_honeypot(q, ctx->world, rng).honeypot_answer);
  }
  c.expect(adversarial > 0 && violations == 0,
           std::to_string(violations) + " of " + std::to_string(adversarial) +
               " adversarial queries with exact == honeypot");

  int regraded = 0, drift = 0;
  for (const auto& run : causal_runs()) {
    const auto again = grade_all(run.result.traces, *ctx);
    for (std::size_t i = 0; i < again.size(); ++i) {
      ++regraded;
      drift += eval::to_json(again[i]) == eval::to_json(run.grades[i]) ? 0 : 1;
      drift += eval::to_json(eval::grade_from_json(eval::to_json(again[i]))) ==
                       eval::to_json(again[i])
                   ? 0
                   : 1;
    }
  }
  c.expect(regraded > 0 && drift == 0, std::to_string(drift) + " grades changed on regrading");
  c.note(std::to_string(adversarial) + " adversarial answers gated, " + std::to_string(regraded) +
         " regraded");
}

// ------------------------------------------------------------------ compliance

void compliance(Checks& c) {
  const auto ctx = bench_context();
  std::vector<eval::Grade> all;
  int replayed = 0, mismatches = 0;
  for (const auto& run : causal_runs()) {
    all.insert(all.end(), run.grades.begin(), run.grades.end());
    for (const auto& t : run.result.traces) {
      ++replayed;
      mismatches += static_cast<int>(
          harness::replay_trace(t, ctx, causal_config(run.policy).session).size());
    }
  }
  c.expect(!all.empty(), "graded sessions present");
  const auto rep = stats::build_report({all, {}, true});
  const auto& rows = rep.at("compliance");
  c.expect(rows.size() == 8, "compliance rows for 4 agents x 2 conditions");
  for (const auto& r : rows) {
    const auto label = r.value("agent", "") + "/" + r.value("condition", "");
    c.expect(r.at("schema_adherence").get<double>() == 1.0, label + " adherence 100%");
    c.expect(r.contains("exceeds_99") && r.at("exceeds_99").is_boolean(),
             label + " reports the >99% field");
    c.expect(r.value("exceeds_99", false), label + " exceeds 99%");
  }
  c.expect(replayed > 0 && mismatches == 0,
           std::to_string(mismatches) + " digest mismatches over " + std::to_string(replayed) +
               " replayed traces");
  c.note(std::to_string(replayed) + " traces replayed");
}

// ------------------------------------------------------------------ end to end

void end_to_end(Checks& c) {
  testing::TempDir root("acc-e2e");
  const auto world_dir = root.path() / "world";
  worldgen::save_world(testing::make_world(testing::bench_config(808)), world_dir);
  auto world = worldgen::load_world(world_dir);

  Rng rng(derive_seed(808, "queries/" + world.world_id));
  auto qs = querygen::generate_queries(world, rng, querygen::default_type_targets());
  querygen::StubProbe probe({}, 1.0);
  qs = querygen::contamination_filter(qs, probe, world.aliases).kept;
  querygen::write_queries(world_dir / "queries.jsonl", qs);
  auto ctx = harness::WorldContext::make(std::move(world),
                                         querygen::read_queries(world_dir / "queries.jsonl"));

  harness::RunConfig rc;
  rc.run_id = "e2e";
  rc.rollouts = 3;
  rc.seed = 808;
  rc.out_dir = root.path() / "run";
  auto agent = harness::make_scripted_agent(Policy::kAnchored);
  const auto result = harness::run_benchmark({ctx}, *agent, rc);

  const auto traces = harness::load_traces(rc.out_dir);
  c.expect(traces.size() == result.traces.size() && !traces.empty(), "traces persisted");
  eval::GradeFile gf{"e2e", std::string(eval::kMatcherVersion), grade_all(traces, *ctx)};
  eval::write_grades(rc.out_dir / "grades.jsonl", gf);

  stats::ReportInput in;
  in.grades = eval::read_grades(rc.out_dir / "grades.jsonl").grades;
  const auto manifest = read_json_file(rc.out_dir / "run.json");
  for (const auto& w : manifest.at("worlds")) {
    in.content_stats[w.at("world_id").get<std::string>()] = w.at("content_stats");
  }
  const auto rep = stats::build_report(in);
  stats::write_report(root.path() / "report", rep);
  const auto md = read_file(root.path() / "report" / "report.md");
  for (int t = 1; t <= 6; ++t) {
    const auto label = "Table " + std::to_string(t) + ".";
    c.expect(md.find(label) != std::string::npos, label + " present");
  }
  for (const char* csv : {"accuracy", "tool_usage", "significance", "clusters", "query_types",
                          "content_stats"}) {
    c.expect(std::filesystem::exists(root.path() / "report" / ("report_" + std::string(csv) + ".csv")),
             std::string(csv) + " csv written");
  }
  c.note(std::to_string(ctx->queries.queries.size()) + " queries, " +
         std::to_string(traces.size()) + " sessions");
}

struct Criterion {
  const char* name;
  double limit_s;
  std::function<void(Checks&)> run;
};

}  // namespace
}  // namespace synthweb

int main() {
  using namespace synthweb;
  const Criterion criteria[] = {
      {"statistics-oracle", 1.0, stats_oracle},
      {"world-generation", 30.0, world_generation},
      {"injection", 10.0, injection},
      {"causal-effect", 300.0, causal_effect},
      {"grading", 60.0, grading},
      {"harness-compliance", 60.0, compliance},
      {"end-to-end", 300.0, end_to_end},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Checks checks;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(checks);
    } catch (const std::exception& e) {
      checks.expect(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    checks.expect(secs < cr.limit_s, "took " + fmt(secs, 2) + " s, limit " + fmt(cr.limit_s, 0) + " s");
    const bool ok = checks.ok();
    failed += ok ? 0 : 1;
    std::cout << (ok ? "PASS " : "FAIL ") << cr.name << " [" << fmt(secs, 2) << " s] "
              << checks.summary() << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
