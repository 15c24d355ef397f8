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

// synthweb: command-line entry point for the benchmark pipeline.

#include <atomic>
#include <condition_variable>
#include <csignal>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "synthweb/error.hpp"
#include "synthweb/evalpipe/grade.hpp"
#include "synthweb/harness/run.hpp"
#include "synthweb/jsonio.hpp"
#include "synthweb/querygen/query.hpp"
#include "synthweb/stats/metrics.hpp"
#include "synthweb/svc/clients.hpp"
#include "synthweb/svc/service.hpp"
#include "synthweb/worldgen/generator.hpp"

namespace fs = std::filesystem;
using namespace synthweb;

namespace {

// Written next to run.json so grade can find the worlds and queries.
constexpr std::string_view kInputsFile = "inputs.json";

struct Inputs {
  std::vector<std::string> worlds;
  std::vector<std::string> queries;  // one per world; empty = {world}/queries.jsonl
};

fs::path queries_path_for(const Inputs& in, std::size_t i) {
  if (i < in.queries.size()) return in.queries[i];
  return fs::path(in.worlds[i]) / "queries.jsonl";
}

std::vector<std::shared_ptr<const harness::WorldContext>> load_contexts(const Inputs& in) {
  if (in.worlds.empty()) throw invalid_argument("at least one --world is required");
  if (!in.queries.empty() && in.queries.size() != in.worlds.size()) {
    throw invalid_argument("give one --queries per --world, or none");
  }
  std::vector<std::shared_ptr<const harness::WorldContext>> out;
  for (std::size_t i = 0; i < in.worlds.size(); ++i) {
    out.push_back(harness::WorldContext::make(worldgen::load_world(in.worlds[i]),
                                              querygen::read_queries(queries_path_for(in, i))));
  }
  return out;
}

std::unique_ptr<harness::AgentClient> make_agent(const std::string& spec) {
  if (spec.rfind("external:", 0) == 0) return std::make_unique<svc::HttpAgentClient>(spec.substr(9));
  return harness::make_scripted_agent(harness::policy_from_string(spec));
}

std::vector<harness::Condition> conditions_from(const std::string& s) {
  if (s == "paired") return {harness::Condition::kStandard, harness::Condition::kAdversarial};
  return {search::condition_from_string(s)};
}

// ------------------------------------------------------------------ generate

struct GenerateOpts {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> sites, topics, min_articles, max_articles;
  std::string out;
};

int cmd_generate(const GenerateOpts& o) {
  worldgen::WorldConfig c;
  if (!o.config.empty()) c = worldgen::WorldConfig::from_json(read_json_file(o.config));
  if (o.seed) c.seed = *o.seed;
  if (o.sites) c.n_sites = *o.sites;
  if (o.topics) c.n_topics = *o.topics;
  if (o.min_articles) c.articles_per_cluster.min = *o.min_articles;
  if (o.max_articles) c.articles_per_cluster.max = *o.max_articles;
  auto realizer = worldgen::make_template_realizer();
  const auto world = worldgen::generate_world(c, *realizer);
  worldgen::save_world(world, o.out);
  std::cout << json{{"world_id", world.world_id},
                    {"dir", o.out},
                    {"content_stats", worldgen::content_stats(world).to_json()}}
                   .dump()
            << "\n";
  return 0;
}

// ------------------------------------------------------------------ queries

struct QueriesOpts {
  std::string world;
  std::string out;
  std::string probe = "stub";
  double stub_hit_rate = 0.0;
  bool no_filter = false;
  std::uint64_t seed = 0;
  std::vector<std::string> targets;  // type=count
};

int cmd_queries(const QueriesOpts& o) {
  const auto world = worldgen::load_world(o.world);
  querygen::TypeTargets targets = querygen::default_type_targets();
  for (const auto& t : o.targets) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw invalid_argument("--target expects type=count, got " + t);
    int n = 0;
    try {
      n = std::stoi(t.substr(eq + 1));
    } catch (const std::exception&) {
      throw invalid_argument("--target expects type=count, got " + t);
    }
    if (n < 0) throw invalid_argument("--target count must be >= 0");
    targets[phrasing::query_type_from_string(t.substr(0, eq))] = n;
  }
  Rng rng(derive_seed(o.seed, "queries/" + world.world_id));
  querygen::GenerationLog log;
  const auto all = querygen::generate_queries(world, rng, targets, &log);
  const fs::path out = o.out.empty() ? fs::path(o.world) / "queries.jsonl" : fs::path(o.out);
  querygen::QuerySet kept;
  json summary = {{"world_id", world.world_id}, {"generated", all.queries.size()},
                  {"skipped", log.skipped.size()}};
  if (o.no_filter) {
    kept = querygen::skip_filter(all);
  } else {
    std::unique_ptr<querygen::ProbeClient> probe;
    if (o.probe == "stub") {
      probe = std::make_unique<querygen::StubProbe>(
          querygen::StubProbe::for_queries(all, o.stub_hit_rate, o.seed));
    } else if (o.probe.rfind("external:", 0) == 0) {
      probe = std::make_unique<svc::HttpProbe>(o.probe.substr(9));
    } else {
      throw invalid_argument("unknown probe '" + o.probe + "'; use stub or external:URL");
    }
    auto filtered = querygen::contamination_filter(all, *probe, world.aliases);
    querygen::write_filter_audit(out.parent_path() / "queries_filtered.jsonl", filtered);
    summary["removed"] = filtered.removed.size();
    kept = std::move(filtered.kept);
  }
  querygen::write_queries(out, kept);
  summary["kept"] = kept.queries.size();
  summary["out"] = out.string();
  std::cout << summary.dump() << "\n";
  return 0;
}

// ------------------------------------------------------------------ run

struct RunOpts {
  Inputs in;
  std::string agent = "anchored";
  std::string condition = "paired";
  int rollouts = 10;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string run_id;
  std::string out;
  std::string service;
  double alpha = 0.5;
  int pin_rank = 0;
  int cap = 200;
  bool no_resume = false;
};

int cmd_run(const RunOpts& o) {
  const auto worlds = load_contexts(o.in);
  auto agent = make_agent(o.agent);
  harness::RunConfig rc;
  rc.run_id = o.run_id.empty() ? fs::path(o.out).filename().string() : o.run_id;
  rc.conditions = conditions_from(o.condition);
  rc.rollouts = o.rollouts;
  rc.seed = o.seed;
  rc.workers = o.workers;
  rc.resume = !o.no_resume;
  rc.out_dir = o.out;
  rc.session.alpha = o.alpha;
  rc.session.pin_rank = o.pin_rank;
  rc.session.tool_round_cap = o.cap;
  rc.session.seed = o.seed;
  if (!o.service.empty()) {
    const auto ids = svc::run_over_wire(o.service, worlds, *agent, rc);
    std::cout << json{{"run_id", rc.run_id}, {"service", o.service}, {"n_sessions", ids.size()}}.dump()
              << "\n";
    return 0;
  }
  const auto result = harness::run_benchmark(worlds, *agent, rc);
  json inputs = {{"worlds", json::array()}};
  for (std::size_t i = 0; i < o.in.worlds.size(); ++i) {
    inputs["worlds"].push_back({{"world_dir", fs::absolute(o.in.worlds[i]).string()},
                                {"queries", fs::absolute(queries_path_for(o.in, i)).string()}});
  }
  write_json_file(fs::path(o.out) / kInputsFile, inputs);
  std::cout << json{{"run_id", rc.run_id},
                    {"out", o.out},
                    {"n_sessions", result.traces.size()},
                    {"resumed", result.resumed},
                    {"session_status", result.manifest.value("session_status", json::object())}}
                   .dump()
            << "\n";
  return 0;
}

// ------------------------------------------------------------------ grade

struct GradeOpts {
  std::string run;
  std::string aliases;
  std::string judge;
  Inputs in;
};

int cmd_grade(GradeOpts o) {
  const fs::path run_dir = o.run;
  if (o.in.worlds.empty()) {
    const auto inputs = read_json_file(run_dir / kInputsFile);
    for (const auto& w : inputs.at("worlds")) {
      o.in.worlds.push_back(w.at("world_dir").get<std::string>());
      o.in.queries.push_back(w.at("queries").get<std::string>());
    }
  }
  const auto worlds = load_contexts(o.in);
  std::optional<eval::AliasTable> aliases;
  if (!o.aliases.empty()) aliases = eval::AliasTable::from_json(read_json_file(o.aliases));
  std::unique_ptr<eval::JudgeClient> judge;
  if (!o.judge.empty()) {
    if (o.judge.rfind("external:", 0) != 0) throw invalid_argument("judge must be external:URL");
    judge = std::make_unique<svc::HttpJudge>(o.judge.substr(9));
  }
  const auto manifest = read_json_file(run_dir / "run.json");
  require_schema(manifest, harness::kRunSchema, "run manifest");
  eval::GradeFile file;
  file.run_id = manifest.at("run_id").get<std::string>();
  file.grader_id = eval::grader_id(judge.get());
  for (const auto& t : harness::load_traces(run_dir)) {
    const harness::WorldContext* ctx = nullptr;
    for (const auto& w : worlds) {
      if (w->world.world_id == t.world_id) ctx = w.get();
    }
    if (ctx == nullptr) throw not_found("world " + t.world_id + " of session " + t.session_id);
    const auto* q = ctx->queries.find(t.query_id);
    if (q == nullptr) throw not_found("query " + t.query_id + " of session " + t.session_id);
    file.grades.push_back(
        eval::grade(t, *q, ctx->world, aliases ? *aliases : ctx->world.aliases, judge.get()));
  }
  eval::write_grades(run_dir / "grades.jsonl", file);
  int correct = 0, ungraded = 0;
  for (const auto& g : file.grades) {
    correct += g.correct;
    ungraded += g.status == eval::GradeStatus::kUngraded;
  }
  std::cout << json{{"run_id", file.run_id},
                    {"grader_id", file.grader_id},
                    {"n_grades", file.grades.size()},
                    {"correct", correct},
                    {"ungraded", ungraded}}
                   .dump()
            << "\n";
  return 0;
}

// ------------------------------------------------------------------ report

struct ReportOpts {
  std::vector<std::string> runs;
  std::string out;
  bool exclude_aborted = false;
};

int cmd_report(const ReportOpts& o) {
  stats::ReportInput input;
  input.aborted_incorrect = !o.exclude_aborted;
  std::string schema_seen;
  for (const auto& r : o.runs) {
    const fs::path dir = r;
    const auto grades = eval::read_grades(dir / "grades.jsonl");
    const auto manifest = read_json_file(dir / "run.json");
    const auto schema = manifest.at("schema").get<std::string>();
    if (!schema_seen.empty() && schema != schema_seen) {
      throw Error(ErrorCode::kSchema, "mixed run schemas: " + schema_seen + " and " + schema);
    }
    schema_seen = schema;
    require_schema(manifest, harness::kRunSchema, "run manifest");
    for (const auto& w : manifest.at("worlds")) {
      input.content_stats[w.at("world_id").get<std::string>()] = w.at("content_stats");
    }
    input.grades.insert(input.grades.end(), grades.grades.begin(), grades.grades.end());
  }
  const auto report = stats::build_report(input);
  stats::write_report(o.out, report);
  std::cout << json{{"out", o.out}, {"n_grades", input.grades.size()}}.dump() << "\n";
  return 0;
}

// ------------------------------------------------------------------ serve

std::atomic<svc::Server*> g_server{nullptr};

void on_signal(int) {
  if (auto* s = g_server.load()) s->interrupt();
}

struct ServeOpts {
  Inputs in;
  std::string host = "127.0.0.1";
  int port = 8080;
  int ttl_seconds = 30 * 60;
  std::uint64_t seed = 0;
  std::string out;
  double alpha = 0.5;
  int pin_rank = 0;
  int cap = 200;
};

int cmd_serve(const ServeOpts& o) {
  svc::ServiceConfig cfg;
  cfg.host = o.host;
  cfg.port = o.port;
  cfg.ttl = std::chrono::seconds(o.ttl_seconds);
  cfg.seed = o.seed;
  cfg.out_dir = o.out;
  cfg.session.alpha = o.alpha;
  cfg.session.pin_rank = o.pin_rank;
  cfg.session.tool_round_cap = o.cap;
  cfg.session.seed = o.seed;
  svc::SessionManager manager(load_contexts(o.in), cfg);
  svc::Server server(manager);

  std::mutex mu;
  std::condition_variable cv;
  bool done = false;
  std::thread sweeper([&] {
    std::unique_lock lk(mu);
    while (!cv.wait_for(lk, std::chrono::seconds(15), [&] { return done; })) manager.sweep();
  });

  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  const int port = server.start(o.host, o.port);
  std::cout << json{{"listening", o.host + ":" + std::to_string(port)}}.dump() << std::endl;
  server.wait();
  g_server = nullptr;
  {
    std::lock_guard lk(mu);
    done = true;
  }
  cv.notify_all();
  sweeper.join();
  return 0;
}

// ------------------------------------------------------------------ validate

int cmd_validate(const std::string& world_dir, const std::string& queries) {
  const auto world = worldgen::load_world(world_dir, /*verify_id=*/false);
  auto findings = worldgen::validate_world(world);
  if (!queries.empty()) {
    const auto qs = querygen::read_queries(queries);
    for (const auto& q : qs.queries) {
      auto f = querygen::validate_query(q, world);
      findings.insert(findings.end(), f.begin(), f.end());
    }
  }
  for (const auto& f : findings) {
    std::cout << json{{"code", f.code}, {"subject", f.subject}, {"message", f.message}}.dump() << "\n";
  }
  std::cerr << json{{"world_id", world.world_id}, {"findings", findings.size()}}.dump() << "\n";
  return findings.empty() ? 0 : 1;
}

void add_inputs(CLI::App* cmd, Inputs& in) {
  cmd->add_option("--world", in.worlds, "World bundle directory (repeatable)")->required();
  cmd->add_option("--queries", in.queries, "Query set per world (default {world}/queries.jsonl)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic adversarial web benchmark engine"};
  app.set_config("--config", "", "TOML/INI file with option defaults; flags win");
  app.require_subcommand(1);

  GenerateOpts gen;
  auto* c_gen = app.add_subcommand("generate", "Generate a world bundle");
  c_gen->add_option("--world-config", gen.config, "WorldConfig JSON");
  c_gen->add_option("--seed", gen.seed);
  c_gen->add_option("--sites", gen.sites);
  c_gen->add_option("--topics", gen.topics);
  c_gen->add_option("--min-articles", gen.min_articles, "Articles per cluster, lower bound");
  c_gen->add_option("--max-articles", gen.max_articles, "Articles per cluster, upper bound");
  c_gen->add_option("--out", gen.out)->required();

  QueriesOpts qo;
  auto* c_q = app.add_subcommand("queries", "Generate and filter a query set");
  c_q->add_option("--world", qo.world)->required();
  c_q->add_option("--out", qo.out, "Output path (default {world}/queries.jsonl)");
  c_q->add_option("--probe", qo.probe, "stub or external:URL");
  c_q->add_option("--stub-hit-rate", qo.stub_hit_rate)->check(CLI::Range(0.0, 1.0));
  c_q->add_flag("--no-filter", qo.no_filter, "Keep every query and record the opt-out");
  c_q->add_option("--seed", qo.seed);
  c_q->add_option("--target", qo.targets, "Per-type count, e.g. --target factual=40")
      ->delimiter(',');

  RunOpts ro;
  auto* c_run = app.add_subcommand("run", "Run an agent over worlds");
  add_inputs(c_run, ro.in);
  c_run->add_option("--agent", ro.agent, "anchored|corroborating|oracle|random|external:URL");
  c_run->add_option("--condition", ro.condition, "standard|adversarial|paired")
      ->check(CLI::IsMember({"standard", "adversarial", "paired"}));
  c_run->add_option("--rollouts", ro.rollouts)->check(CLI::PositiveNumber);
  c_run->add_option("--seed", ro.seed);
  c_run->add_option("--workers", ro.workers)->check(CLI::PositiveNumber);
  c_run->add_option("--run-id", ro.run_id, "Default: the output directory name");
  c_run->add_option("--out", ro.out)->required();
  c_run->add_option("--service", ro.service, "Run against a synthweb service at this URL");
  c_run->add_option("--alpha", ro.alpha)->check(CLI::Range(0.0, 1.0));
  c_run->add_option("--pin-rank", ro.pin_rank)->check(CLI::NonNegativeNumber);
  c_run->add_option("--cap", ro.cap, "Tool-round cap per session")->check(CLI::PositiveNumber);
  c_run->add_flag("--no-resume", ro.no_resume);

  GradeOpts go;
  auto* c_grade = app.add_subcommand("grade", "Grade a run's traces");
  c_grade->add_option("--run", go.run)->required();
  c_grade->add_option("--aliases", go.aliases, "Alias table (default: each world's own)");
  c_grade->add_option("--judge", go.judge, "external:URL");
  c_grade->add_option("--world", go.in.worlds, "Override the run's recorded worlds");
  c_grade->add_option("--queries", go.in.queries);

  ReportOpts rep;
  auto* c_rep = app.add_subcommand("report", "Aggregate graded runs into tables");
  c_rep->add_option("--run", rep.runs, "Graded run directory (repeatable)")->required();
  c_rep->add_option("--out", rep.out)->required();
  c_rep->add_flag("--exclude-aborted", rep.exclude_aborted,
                  "Drop expired and aborted sessions instead of counting them wrong");

  ServeOpts so;
  auto* c_serve = app.add_subcommand("serve", "Serve worlds over HTTP");
  add_inputs(c_serve, so.in);
  c_serve->add_option("--host", so.host);
  c_serve->add_option("--port", so.port);
  c_serve->add_option("--ttl", so.ttl_seconds, "Idle session ttl in seconds")
      ->check(CLI::PositiveNumber);
  c_serve->add_option("--seed", so.seed);
  c_serve->add_option("--out", so.out, "Directory for run manifests and traces");
  c_serve->add_option("--alpha", so.alpha)->check(CLI::Range(0.0, 1.0));
  c_serve->add_option("--pin-rank", so.pin_rank)->check(CLI::NonNegativeNumber);
  c_serve->add_option("--cap", so.cap)->check(CLI::PositiveNumber);

  std::string v_world, v_queries;
  auto* c_val = app.add_subcommand("validate", "Check world and query invariants");
  c_val->add_option("--world", v_world)->required();
  c_val->add_option("--queries", v_queries);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*c_gen) return cmd_generate(gen);
    if (*c_q) return cmd_queries(qo);
    if (*c_run) return cmd_run(ro);
    if (*c_grade) return cmd_grade(go);
    if (*c_rep) return cmd_report(rep);
    if (*c_serve) return cmd_serve(so);
    if (*c_val) return cmd_validate(v_world, v_queries);
  } catch (const Error& e) {
    std::cerr << json{{"error", {{"code", to_string(e.code())}, {"message", e.what()}}}}.dump()
              << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", {{"code", "internal"}, {"message", e.what()}}}}.dump() << "\n";
    return 2;
  }
  return 2;
}
