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

#include "synthweb/svc/clients.hpp"

#include <regex>

#include <httplib.h>

#include "synthweb/error.hpp"

namespace synthweb::svc {

Endpoint Endpoint::parse(const std::string& url) {
  static const std::regex re(R"(^(https?://[^/?#]+)(/[^?#]*)?$)");
  std::smatch m;
  if (!std::regex_match(url, m, re)) throw invalid_argument("bad endpoint url: " + url);
  Endpoint ep{m[1].str(), m[2].str()};
  while (!ep.prefix.empty() && ep.prefix.back() == '/') ep.prefix.pop_back();
  return ep;
}

namespace {

httplib::Client make_client(const Endpoint& ep, std::chrono::seconds timeout) {
  httplib::Client cli(ep.origin);
  if (!cli.is_valid()) throw Error(ErrorCode::kUnavailable, "unsupported endpoint " + ep.origin);
  cli.set_connection_timeout(std::chrono::seconds(10));
  cli.set_read_timeout(timeout);
  cli.set_write_timeout(timeout);
  return cli;
}

HttpReply decode(const httplib::Result& res, const Endpoint& ep, const std::string& path) {
  if (!res) {
    throw Error(ErrorCode::kUnavailable,
                ep.origin + path + ": " + httplib::to_string(res.error()));
  }
  HttpReply r{res->status, json()};
  try {
    r.body = res->body.empty() ? json::object() : json::parse(res->body);
  } catch (const json::parse_error&) {
    throw Error(ErrorCode::kUnavailable,
                ep.origin + path + " answered " + std::to_string(res->status) + " with a non-JSON body");
  }
  return r;
}

harness::ToolError tool_error_of(const HttpReply& r) {
  return {r.body.value("code", "http_" + std::to_string(r.status)), r.body.value("message", "")};
}

}  // namespace

HttpReply http_post(const Endpoint& ep, const std::string& path, const json& body,
                    std::chrono::seconds timeout) {
  auto cli = make_client(ep, timeout);
  const std::string full = ep.prefix + path;
  return decode(cli.Post(full, body.dump(), "application/json"), ep, full);
}

HttpReply http_get(const Endpoint& ep, const std::string& path, std::chrono::seconds timeout) {
  auto cli = make_client(ep, timeout);
  const std::string full = ep.prefix + path;
  return decode(cli.Get(full), ep, full);
}

// ------------------------------------------------------------------ tools

HttpToolPort::HttpToolPort(Endpoint service, std::string session_id)
    : ep_(std::move(service)), session_id_(std::move(session_id)) {}

harness::ToolResult<std::vector<search::SearchResult>> HttpToolPort::search(
    const std::string& query, int k) {
  const auto r = http_post(ep_, "/sessions/" + session_id_ + "/search", {{"query", query}, {"k", k}});
  if (r.status != 200) {
    if (r.status >= 500) throw Error(ErrorCode::kUnavailable, r.body.dump());
    return tool_error_of(r);
  }
  std::vector<search::SearchResult> out;
  for (const auto& j : r.body.at("results")) {
    search::SearchResult x;
    x.rank = j.at("rank").get<int>();
    x.article_id = j.at("article_id").get<std::string>();
    x.title = j.at("title").get<std::string>();
    x.snippet = j.at("snippet").get<std::string>();
    x.domain = j.at("domain").get<std::string>();
    out.push_back(std::move(x));
  }
  return out;
}

harness::ToolResult<harness::ArticleView> HttpToolPort::read(const std::string& article_id) {
  const auto r = http_get(ep_, "/sessions/" + session_id_ + "/articles/" + article_id);
  if (r.status != 200) {
    if (r.status >= 500) throw Error(ErrorCode::kUnavailable, r.body.dump());
    return tool_error_of(r);
  }
  harness::ArticleView v;
  v.article_id = r.body.at("article_id").get<std::string>();
  v.title = r.body.at("title").get<std::string>();
  v.body = r.body.at("body").get<std::string>();
  v.domain = r.body.at("domain").get<std::string>();
  v.timestamp = r.body.at("timestamp").get<std::string>();
  return v;
}

std::vector<std::string> run_over_wire(
    const std::string& service_url,
    const std::vector<std::shared_ptr<const harness::WorldContext>>& worlds,
    harness::AgentClient& agent, const harness::RunConfig& config) {
  config.validate();
  const Endpoint ep = Endpoint::parse(service_url);
  std::vector<std::pair<harness::SessionKey, std::string>> ids;
  for (const auto& ctx : worlds) {
    for (const auto& q : ctx->queries.queries) {
      for (int rollout = 0; rollout < config.rollouts; ++rollout) {
        for (const auto c : config.conditions) {
          const auto created = http_post(ep, "/runs/" + config.run_id + "/sessions",
                                         {{"world_id", ctx->world.world_id},
                                          {"query_id", q.query_id},
                                          {"condition", search::to_string(c)},
                                          {"rollout_index", rollout},
                                          {"agent_id", agent.id()}});
          if (created.status != 201) {
            throw Error(ErrorCode::kConflict, "create session for " + q.query_id + ": " +
                                                  created.body.value("code", "") + ": " +
                                                  created.body.value("message", ""));
          }
          const auto sid = created.body.at("session_id").get<std::string>();
          harness::AgentTask task{sid,
                                  q.query_id,
                                  q.question,
                                  created.body.at("prompt").get<std::string>(),
                                  harness::agent_seed_for(config.seed, ctx->world.world_id,
                                                          q.query_id, rollout),
                                  &q,
                                  &ctx->world};
          HttpToolPort port(ep, sid);
          std::string raw;
          bool ok = true;
          try {
            raw = agent.run(port, task);
          } catch (const Error&) {
            // Left open; the service expires it after its ttl.
            ok = false;
          }
          if (ok) http_post(ep, "/sessions/" + sid + "/answer", {{"raw_text", raw}});
          ids.emplace_back(harness::SessionKey{ctx->world.world_id, q.query_id, c, rollout}, sid);
        }
      }
    }
  }
  std::sort(ids.begin(), ids.end());
  std::vector<std::string> out;
  for (auto& [key, sid] : ids) out.push_back(std::move(sid));
  return out;
}

// ------------------------------------------------------------------ agent

HttpAgentClient::HttpAgentClient(std::string url, int max_steps)
    : url_(std::move(url)), ep_(Endpoint::parse(url_)), max_steps_(max_steps) {
  if (max_steps_ < 1) throw invalid_argument("max_steps must be positive");
}

std::string HttpAgentClient::run(harness::ToolPort& tools, const harness::AgentTask& task) {
  json last_action = nullptr;
  json last_result = nullptr;
  int n_calls = 0;
  for (int step = 0; step < max_steps_; ++step) {
    const auto r = http_post(ep_, "",
                             {{"session_id", task.session_id},
                              {"query_id", task.query_id},
                              {"question", task.question},
                              {"prompt", task.prompt},
                              {"step", step},
                              {"n_tool_calls", n_calls},
                              {"last_action", last_action},
                              {"last_result", last_result}});
    if (r.status != 200) {
      throw Error(ErrorCode::kUnavailable,
                  "agent endpoint answered " + std::to_string(r.status) + ": " + r.body.dump());
    }
    const auto action = r.body.value("action", "");
    if (action == "answer") return r.body.at("raw_text").get<std::string>();
    ++n_calls;
    if (action == "search") {
      const auto query = r.body.at("query").get<std::string>();
      const int k = r.body.value("k", 10);
      last_action = {{"action", "search"}, {"query", query}, {"k", k}};
      auto res = tools.search(query, k);
      if (const auto* e = std::get_if<harness::ToolError>(&res)) {
        last_result = {{"error", {{"code", e->code}, {"message", e->message}}}};
        if (e->code == "expired") return "";
      } else {
        json rows = json::array();
        for (const auto& x : std::get<0>(res)) {
          rows.push_back({{"rank", x.rank},
                          {"article_id", x.article_id},
                          {"title", x.title},
                          {"snippet", x.snippet},
                          {"domain", x.domain}});
        }
        last_result = {{"results", rows}};
      }
    } else if (action == "read") {
      const auto id = r.body.at("article_id").get<std::string>();
      last_action = {{"action", "read"}, {"article_id", id}};
      auto res = tools.read(id);
      if (const auto* e = std::get_if<harness::ToolError>(&res)) {
        last_result = {{"error", {{"code", e->code}, {"message", e->message}}}};
        if (e->code == "expired") return "";
      } else {
        last_result = harness::to_json(std::get<harness::ArticleView>(res));
      }
    } else {
      throw Error(ErrorCode::kUnavailable, "agent endpoint sent unknown action '" + action + "'");
    }
  }
  throw Error(ErrorCode::kUnavailable,
              "agent endpoint did not answer within " + std::to_string(max_steps_) + " steps");
}

// ------------------------------------------------------------------ probe, judge

HttpProbe::HttpProbe(std::string url) : url_(std::move(url)), ep_(Endpoint::parse(url_)) {}

std::string HttpProbe::answer(const std::string& question) {
  const auto r = http_post(ep_, "", {{"question", question}});
  if (r.status != 200 || !r.body.contains("answer")) {
    throw Error(ErrorCode::kUnavailable, "probe answered " + std::to_string(r.status));
  }
  return r.body.at("answer").get<std::string>();
}

HttpJudge::HttpJudge(std::string url) : url_(std::move(url)), ep_(Endpoint::parse(url_)) {}

eval::JudgeVerdict HttpJudge::judge(const eval::JudgeRequest& request) {
  const auto r = http_post(ep_, "",
                           {{"question", request.question},
                            {"agent_answer", request.agent_answer},
                            {"exact_answer", request.exact_answer},
                            {"misinfo_claims", request.misinfo_claims}});
  if (r.status != 200 || !r.body.contains("correct")) {
    throw Error(ErrorCode::kUnavailable, "judge answered " + std::to_string(r.status));
  }
  return {r.body.at("correct").get<bool>(), r.body.value("rationale", "")};
}

}  // namespace synthweb::svc
