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

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "synthweb/harness/session.hpp"
#include "synthweb/phrasing.hpp"

namespace synthweb::harness {

// The uniform zero-shot prompt shipped with the library, and its digest.
std::string_view agent_prompt_template();
std::string prompt_hash();
std::string render_prompt(std::string_view question);

struct AgentTask {
  std::string session_id;
  std::string query_id;
  std::string question;
  std::string prompt;
  std::uint64_t seed = 0;
  // Ground truth, visible only to built-in baselines that need it.
  const querygen::Query* query = nullptr;
  const worldgen::WorldBundle* world = nullptr;
};

// Drives one session through the tools and returns the final raw response
// text. Implementations must be safe to call from several threads at once.
// Transport failures raise Error(kUnavailable).
class AgentClient {
 public:
  virtual ~AgentClient() = default;
  virtual std::string id() const = 0;
  virtual std::string run(ToolPort& tools, const AgentTask& task) = 0;
};

enum class Policy { kAnchored, kCorroborating, kOracle, kRandom };

std::string_view to_string(Policy p);
Policy policy_from_string(std::string_view s);

std::unique_ptr<AgentClient> make_scripted_agent(Policy policy);

// Answer to a parsed question as stated by `body`, or nullopt when the text
// does not state everything the question needs.
std::optional<std::string> answer_from_text(const phrasing::ParsedQuestion& q,
                                            std::string_view body);

// Every answer the Random baseline may emit for `q`.
std::vector<std::string> answer_candidates(const querygen::Query& q,
                                           const worldgen::WorldBundle& world);

}  // namespace synthweb::harness
