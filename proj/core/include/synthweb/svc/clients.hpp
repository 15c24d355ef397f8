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

#include <chrono>
#include <memory>
#include <string>
#include <vector>

#include "synthweb/evalpipe/grade.hpp"
#include "synthweb/harness/agent.hpp"
#include "synthweb/harness/run.hpp"
#include "synthweb/querygen/query.hpp"

namespace synthweb::svc {

// "http://host:port/prefix" split into origin and path prefix.
struct Endpoint {
  std::string origin;
  std::string prefix;

  static Endpoint parse(const std::string& url);
};

// Posts `body` as JSON and returns the decoded response with its status.
// Transport failures and non-JSON bodies raise Error(kUnavailable).
struct HttpReply {
  int status = 0;
  json body;
};
HttpReply http_post(const Endpoint& ep, const std::string& path, const json& body,
                    std::chrono::seconds timeout = std::chrono::seconds(60));
HttpReply http_get(const Endpoint& ep, const std::string& path,
                   std::chrono::seconds timeout = std::chrono::seconds(60));

// The two tools of one remote session.
class HttpToolPort final : public harness::ToolPort {
 public:
  HttpToolPort(Endpoint service, std::string session_id);

  harness::ToolResult<std::vector<search::SearchResult>> search(const std::string& query,
                                                                int k) override;
  harness::ToolResult<harness::ArticleView> read(const std::string& article_id) override;

 private:
  Endpoint ep_;
  std::string session_id_;
};

// Client side of a served run: creates each session with an explicit
// condition, drives `agent` through the wire tools and submits its answer.
// Returns the session ids in pairing-key order; the traces stay with the
// server.
std::vector<std::string> run_over_wire(
    const std::string& service_url,
    const std::vector<std::shared_ptr<const harness::WorldContext>>& worlds,
    harness::AgentClient& agent, const harness::RunConfig& config);

// Remote agent speaking the step protocol. Each step posts
//   {"session_id", "query_id", "question", "prompt", "step", "n_tool_calls",
//    "last_action", "last_result"}
// and expects one of
//   {"action": "search", "query", "k"}
//   {"action": "read", "article_id"}
//   {"action": "answer", "raw_text"}
class HttpAgentClient final : public harness::AgentClient {
 public:
  explicit HttpAgentClient(std::string url, int max_steps = 256);

  std::string id() const override { return "external:" + url_; }
  std::string run(harness::ToolPort& tools, const harness::AgentTask& task) override;

 private:
  std::string url_;
  Endpoint ep_;
  int max_steps_;
};

// POST {"question"} -> {"answer"}.
class HttpProbe final : public querygen::ProbeClient {
 public:
  explicit HttpProbe(std::string url);

  std::string id() const override { return "external:" + url_; }
  std::string answer(const std::string& question) override;

 private:
  std::string url_;
  Endpoint ep_;
};

// POST {"question", "agent_answer", "exact_answer", "misinfo_claims"}
//   -> {"correct", "rationale", "model"?}.
class HttpJudge final : public eval::JudgeClient {
 public:
  explicit HttpJudge(std::string url);

  std::string id() const override { return "external:" + url_; }
  eval::JudgeVerdict judge(const eval::JudgeRequest& request) override;

 private:
  std::string url_;
  Endpoint ep_;
};

}  // namespace synthweb::svc
