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

#include "synthweb/harness/run.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "synthweb/dates.hpp"
#include "synthweb/digest.hpp"
#include "synthweb/error.hpp"
#include "synthweb/rng.hpp"
#include "synthweb/worldgen/generator.hpp"

namespace synthweb::harness {

void RunConfig::validate() const {
  if (run_id.empty()) throw invalid_argument("run id must not be empty");
  if (run_id.find('/') != std::string::npos || run_id == "." || run_id == "..") {
    throw invalid_argument("run id must be a plain name");
  }
  if (conditions.empty()) throw invalid_argument("at least one condition is required");
  if (rollouts < 1) throw invalid_argument("rollouts must be >= 1");
  if (workers < 1) throw invalid_argument("workers must be >= 1");
  if (session.tool_round_cap < 1) throw invalid_argument("tool round cap must be >= 1");
  if (session.pin_rank < 0) throw invalid_argument("pin rank must be >= 0");
  if (!(session.alpha >= 0.0 && session.alpha <= 1.0)) {
    throw invalid_argument("fusion alpha must lie in [0, 1]");
  }
}

std::filesystem::path trace_path(const std::filesystem::path& out_dir, std::string_view run_id,
                                 const SessionKey& key) {
  return out_dir / "traces" / std::string(run_id) / std::string(search::to_string(key.condition)) /
         key.world_id / std::to_string(key.rollout_index) / (key.query_id + ".jsonl");
}

std::string session_id_for(std::uint64_t seed, std::string_view run_id, const SessionKey& key) {
  return hex64(derive_seed(seed, "session/" + std::string(run_id) + "/" + key.world_id + "/" +
                                     key.query_id + "/" +
                                     std::string(search::to_string(key.condition)) + "/" +
                                     std::to_string(key.rollout_index)));
}

std::uint64_t agent_seed_for(std::uint64_t seed, std::string_view world_id,
                             std::string_view query_id, int rollout_index) {
  return derive_seed(seed, "agent/" + std::string(world_id) + "/" + std::string(query_id) + "/" +
                               std::to_string(rollout_index));
}

std::string query_set_hash(const querygen::QuerySet& qs) {
  std::string canonical;
  for (const auto& q : qs.queries) canonical += querygen::to_json(q).dump() + "\n";
  return digest128_hex(canonical);
}

void write_trace(const std::filesystem::path& path, const SessionTrace& trace) {
  write_jsonl_file(path, trace_lines(trace));
}

SessionTrace read_trace(const std::filesystem::path& path) {
  return trace_from_lines(read_jsonl_file(path));
}

std::vector<SessionTrace> load_traces(const std::filesystem::path& run_dir) {
  const auto root = run_dir / "traces";
  if (!std::filesystem::is_directory(root)) {
    throw not_found("no traces under " + run_dir.string());
  }
  std::vector<SessionTrace> out;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
      out.push_back(read_trace(entry.path()));
    }
  }
  std::sort(out.begin(), out.end(), [](const SessionTrace& a, const SessionTrace& b) {
    return SessionKey{a.world_id, a.query_id, a.condition, a.rollout_index} <
           SessionKey{b.world_id, b.query_id, b.condition, b.rollout_index};
  });
  return out;
}

SessionTrace run_session(Session& session, AgentClient& agent, const AgentTask& task) {
  try {
    const std::string raw = agent.run(session, task);
    if (session.state() == SessionState::kOpen) session.submit(raw);
  } catch (const Error& e) {
    session.abort(std::string(to_string(e.code())) + ": " + e.what());
  } catch (const std::exception& e) {
    session.abort(std::string("internal: ") + e.what());
  }
  return session.trace();
}

namespace {

struct Job {
  SessionKey key;
  std::shared_ptr<const WorldContext> ctx;
  const querygen::Query* query = nullptr;
};

json counts_of(const std::vector<SessionTrace>& traces) {
  std::map<std::string, int> by_status;
  for (const auto& t : traces) ++by_status[t.status];
  return by_status;
}

}  // namespace

RunResult run_benchmark(const std::vector<std::shared_ptr<const WorldContext>>& worlds,
                        AgentClient& agent, const RunConfig& config) {
  config.validate();
  if (worlds.empty()) throw invalid_argument("a run needs at least one world");

  std::vector<Job> jobs;
  std::set<SessionKey> keys;
  for (const auto& ctx : worlds) {
    for (const auto& q : ctx->queries.queries) {
      for (const auto c : config.conditions) {
        for (int r = 0; r < config.rollouts; ++r) {
          SessionKey key{ctx->world.world_id, q.query_id, c, r};
          if (!keys.insert(key).second) {
            throw Error(ErrorCode::kConflict, "duplicate session " + q.query_id + "/" +
                                                  std::string(search::to_string(c)) + "/" +
                                                  std::to_string(r));
          }
          jobs.push_back({key, ctx, &q});
        }
      }
    }
  }

  json manifest = {{"schema", kRunSchema},
                   {"run_id", config.run_id},
                   {"agent_id", agent.id()},
                   {"prompt_hash", prompt_hash()},
                   {"conditions", json::array()},
                   {"rollouts", config.rollouts},
                   {"seed", config.seed},
                   {"tool_round_cap", config.session.tool_round_cap},
                   {"pin_rank", config.session.pin_rank},
                   {"alpha", config.session.alpha},
                   {"honeypot_seed", config.session.seed},
                   {"created_at", utc_now_iso()},
                   {"worlds", json::array()}};
  for (const auto c : config.conditions) manifest["conditions"].push_back(search::to_string(c));
  for (const auto& ctx : worlds) {
    manifest["worlds"].push_back({{"world_id", ctx->world.world_id},
                                  {"query_set_hash", query_set_hash(ctx->queries)},
                                  {"n_queries", ctx->queries.queries.size()},
                                  {"query_filter", ctx->queries.filter},
                                  {"content_stats", worldgen::content_stats(ctx->world).to_json()}});
  }
  const bool persist = !config.out_dir.empty();
  if (persist) {
    std::filesystem::create_directories(config.out_dir);
    manifest["status"] = "running";
    write_json_file(config.out_dir / "run.json", manifest);
  }

  std::vector<SessionTrace> traces(jobs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<int> resumed{0};
  std::mutex error_mu;
  std::exception_ptr failure;

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      const Job& job = jobs[i];
      try {
        const auto path = persist ? trace_path(config.out_dir, config.run_id, job.key)
                                  : std::filesystem::path();
        if (persist && config.resume && std::filesystem::exists(path)) {
          auto t = read_trace(path);
          if (t.state != SessionState::kOpen) {
            traces[i] = std::move(t);
            ++resumed;
            continue;
          }
        }
        Session session(job.ctx, *job.query, job.key.condition, job.key.rollout_index,
                        config.session, session_id_for(config.seed, config.run_id, job.key));
        session.mutable_trace().run_id = config.run_id;
        session.mutable_trace().agent_id = agent.id();
        session.mutable_trace().prompt_hash = prompt_hash();
        AgentTask task;
        task.session_id = session.id();
        task.query_id = job.query->query_id;
        task.question = job.query->question;
        task.prompt = render_prompt(job.query->question);
        task.seed = agent_seed_for(config.seed, job.key.world_id, job.key.query_id,
                                   job.key.rollout_index);
        task.query = job.query;
        task.world = &job.ctx->world;
        traces[i] = run_session(session, agent, task);
        if (persist) write_trace(path, traces[i]);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!failure) failure = std::current_exception();
        next.store(jobs.size());
        return;
      }
    }
  };

  const int n_workers = std::min<int>(config.workers, static_cast<int>(std::max<std::size_t>(1, jobs.size())));
  if (n_workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  manifest["status"] = "complete";
  manifest["n_sessions"] = traces.size();
  manifest["session_status"] = counts_of(traces);
  if (persist) write_json_file(config.out_dir / "run.json", manifest);
  return {std::move(traces), std::move(manifest), resumed.load()};
}

std::vector<ReplayMismatch> replay_trace(const SessionTrace& trace,
                                         std::shared_ptr<const WorldContext> ctx,
                                         const SessionConfig& config) {
  if (!ctx) throw invalid_argument("replay needs a world");
  if (trace.world_id != ctx->world.world_id) {
    throw invalid_argument("trace is from world " + trace.world_id);
  }
  const auto* q = ctx->queries.find(trace.query_id);
  if (q == nullptr) throw not_found("query " + trace.query_id);
  Session session(ctx, *q, trace.condition, trace.rollout_index, config, trace.session_id);
  std::vector<ReplayMismatch> out;
  for (const auto& call : trace.calls) {
    std::string digest;
    if (call.kind == ToolKind::kSearch) {
      auto r = session.search(call.argument, call.k);
      digest = std::visit([](const auto& v) { return result_digest(v); }, r);
    } else {
      auto r = session.read(call.argument);
      digest = std::visit([](const auto& v) { return result_digest(v); }, r);
    }
    if (digest != call.result_digest) out.push_back({call.seq, call.result_digest, digest});
  }
  return out;
}

}  // namespace synthweb::harness
