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

#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "synthweb/harness/agent.hpp"
#include "synthweb/harness/session.hpp"

namespace synthweb::harness {

inline constexpr std::string_view kRunSchema = "synthweb.run/1";

struct RunConfig {
  std::string run_id;
  std::vector<Condition> conditions = {Condition::kStandard, Condition::kAdversarial};
  int rollouts = 10;
  std::uint64_t seed = 0;
  SessionConfig session;
  int workers = 1;
  // Reuse completed trace files already on disk.
  bool resume = true;
  std::filesystem::path out_dir;  // empty: keep traces in memory only

  void validate() const;
};

struct SessionKey {
  std::string world_id;
  std::string query_id;
  Condition condition = Condition::kStandard;
  int rollout_index = 0;

  auto operator<=>(const SessionKey&) const = default;
};

// traces/{run_id}/{condition}/{world}/{rollout}/{query_id}.jsonl
std::filesystem::path trace_path(const std::filesystem::path& out_dir, std::string_view run_id,
                                 const SessionKey& key);

std::string session_id_for(std::uint64_t seed, std::string_view run_id, const SessionKey& key);
// Agent seed shared by both conditions of a pairing key.
std::uint64_t agent_seed_for(std::uint64_t seed, std::string_view world_id,
                             std::string_view query_id, int rollout_index);

// Digest of a query set's canonical JSON rows.
std::string query_set_hash(const querygen::QuerySet& qs);

struct RunResult {
  std::vector<SessionTrace> traces;  // ordered by SessionKey
  json manifest;
  int resumed = 0;
};

// Runs every (world, query, condition, rollout) session through `agent`
// on a bounded worker pool, persisting each finished trace.
RunResult run_benchmark(const std::vector<std::shared_ptr<const WorldContext>>& worlds,
                        AgentClient& agent, const RunConfig& config);

// Drives a single session with `agent`; transport failures abort it.
SessionTrace run_session(Session& session, AgentClient& agent, const AgentTask& task);

std::vector<SessionTrace> load_traces(const std::filesystem::path& run_dir);
void write_trace(const std::filesystem::path& path, const SessionTrace& trace);
SessionTrace read_trace(const std::filesystem::path& path);

struct ReplayMismatch {
  int seq = 0;
  std::string expected;
  std::string actual;
};

// Re-issues a trace's tool calls against a fresh session with the same key
// and seed; an empty result means every result digest was reproduced.
std::vector<ReplayMismatch> replay_trace(const SessionTrace& trace,
                                         std::shared_ptr<const WorldContext> ctx,
                                         const SessionConfig& config);

}  // namespace synthweb::harness
