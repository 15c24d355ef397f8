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

#include <benchmark/benchmark.h>

#include "synthweb/evalpipe/grade.hpp"
#include "synthweb/harness/run.hpp"
#include "synthweb/stats/metrics.hpp"
#include "synthweb/worldgen/generator.hpp"

namespace synthweb {
namespace {

worldgen::WorldConfig config(int topics, int lo, int hi) {
  worldgen::WorldConfig c;
  c.seed = 42;
  c.n_sites = 20;
  c.n_topics = topics;
  c.articles_per_cluster = {lo, hi};
  return c;
}

std::shared_ptr<const harness::WorldContext> context() {
  static const auto ctx = [] {
    auto realizer = worldgen::make_template_realizer();
    auto world = worldgen::generate_world(config(10, 45, 55), *realizer);
    Rng rng(7);
    auto qs = querygen::generate_queries(world, rng, {{phrasing::QueryType::kFactual, 13},
                                                      {phrasing::QueryType::kComparison, 13},
                                                      {phrasing::QueryType::kTimeline, 12},
                                                      {phrasing::QueryType::kEvaluation, 12}});
    return harness::WorldContext::make(std::move(world), std::move(qs));
  }();
  return ctx;
}

void BM_GenerateWorld(benchmark::State& state) {
  const auto cfg = config(static_cast<int>(state.range(0)), 45, 55);
  auto realizer = worldgen::make_template_realizer();
  std::size_t articles = 0;
  for (auto _ : state) {
    auto w = worldgen::generate_world(cfg, *realizer);
    articles = w.articles.size();
    benchmark::DoNotOptimize(w);
  }
  state.counters["articles"] = static_cast<double>(articles);
}
BENCHMARK(BM_GenerateWorld)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_BuildIndex(benchmark::State& state) {
  const auto& world = context()->world;
  for (auto _ : state) benchmark::DoNotOptimize(search::SearchIndex::build(world));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(world.articles.size()));
}
BENCHMARK(BM_BuildIndex)->Unit(benchmark::kMillisecond);

void BM_Search(benchmark::State& state) {
  const auto ctx = context();
  const auto& qs = ctx->queries.queries;
  std::size_t i = 0;
  for (auto _ : state) {
    search::SessionOverlay overlay;
    benchmark::DoNotOptimize(
        search::search(ctx->index, overlay, qs[i++ % qs.size()].question, {10, 0.5}));
  }
}
BENCHMARK(BM_Search)->Unit(benchmark::kMicrosecond);

void BM_AdversarialSession(benchmark::State& state) {
  const auto ctx = context();
  auto agent = harness::make_scripted_agent(harness::Policy::kAnchored);
  const auto& q = ctx->queries.queries.front();
  int n = 0;
  for (auto _ : state) {
    harness::Session s(ctx, q, harness::Condition::kAdversarial, n++, {}, "bench");
    harness::AgentTask task{"bench", q.query_id, q.question, harness::render_prompt(q.question),
                            1, &q, &ctx->world};
    benchmark::DoNotOptimize(harness::run_session(s, *agent, task));
  }
}
BENCHMARK(BM_AdversarialSession)->Unit(benchmark::kMicrosecond);

void BM_GradeAndReport(benchmark::State& state) {
  const auto ctx = context();
  auto agent = harness::make_scripted_agent(harness::Policy::kCorroborating);
  harness::RunConfig rc;
  rc.run_id = "bench";
  rc.rollouts = 2;
  const auto run = harness::run_benchmark({ctx}, *agent, rc);
  for (auto _ : state) {
    stats::ReportInput in;
    for (const auto& t : run.traces) {
      in.grades.push_back(
          eval::grade(t, *ctx->queries.find(t.query_id), ctx->world, ctx->world.aliases));
    }
    benchmark::DoNotOptimize(stats::build_report(in));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(run.traces.size()));
}
BENCHMARK(BM_GradeAndReport)->Unit(benchmark::kMillisecond);

void BM_Wilson(benchmark::State& state) {
  int s = 0;
  for (auto _ : state) benchmark::DoNotOptimize(stats::wilson_ci(s++ % 5871, 5870));
}
BENCHMARK(BM_Wilson);

}  // namespace
}  // namespace synthweb

BENCHMARK_MAIN();
