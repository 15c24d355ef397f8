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

#include "synthweb/svc/service.hpp"

#include <algorithm>
#include <thread>

#include <httplib.h>

#include "synthweb/dates.hpp"
#include "synthweb/error.hpp"
#include "synthweb/rng.hpp"
#include "synthweb/worldgen/generator.hpp"

namespace synthweb::svc {

using harness::Condition;
using harness::SessionKey;
using harness::SessionState;

ApiResponse error_response(int status, std::string code, std::string message, json detail) {
  return {status,
          {{"code", std::move(code)}, {"message", std::move(message)}, {"detail", std::move(detail)}}};
}

namespace {

ApiResponse from_error(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kSchema: return error_response(400, "invalid_argument", e.what());
    case ErrorCode::kNotFound: return error_response(404, "not_found", e.what());
    case ErrorCode::kConflict: return error_response(409, "conflict", e.what());
    case ErrorCode::kExpired: return error_response(410, "expired", e.what());
    case ErrorCode::kUnavailable: return error_response(503, "unavailable", e.what());
    default: return error_response(500, "internal", e.what());
  }
}

ApiResponse from_tool_error(const harness::ToolError& e) {
  int status = 400;
  if (e.code == "no_such_article") status = 404;
  else if (e.code == "expired") status = 410;
  else if (e.code == "closed") status = 409;
  return error_response(status, e.code, e.message);
}

template <class F>
ApiResponse guarded(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    return from_error(e);
  } catch (const json::exception& e) {
    return error_response(400, "malformed_request", e.what());
  }
}

// Results on the wire carry no score or pin flag so the two conditions
// look alike to the client.
json wire_result(const search::SearchResult& r) {
  return {{"rank", r.rank},
          {"article_id", r.article_id},
          {"title", r.title},
          {"snippet", r.snippet},
          {"domain", r.domain}};
}

json session_status(const harness::Session& s) {
  const auto& t = s.trace();
  return {{"session_id", t.session_id},
          {"run_id", t.run_id},
          {"query_id", t.query_id},
          {"question", s.query().question},
          {"state", harness::to_string(t.state)},
          {"n_tool_calls", t.n_tool_calls()}};
}

}  // namespace

SessionManager::SessionManager(std::vector<std::shared_ptr<const harness::WorldContext>> worlds,
                               ServiceConfig config)
    : worlds_(std::move(worlds)),
      config_(std::move(config)),
      clock_([] { return std::chrono::steady_clock::now(); }) {
  if (worlds_.empty()) throw invalid_argument("the service needs at least one world");
  if (config_.ttl.count() < 1) throw invalid_argument("session ttl must be positive");
  world_rows_ = json::array();
  for (const auto& w : worlds_) {
    world_rows_.push_back({{"world_id", w->world.world_id},
                           {"query_set_hash", harness::query_set_hash(w->queries)},
                           {"n_queries", w->queries.queries.size()},
                           {"content_stats", worldgen::content_stats(w->world).to_json()}});
  }
}

void SessionManager::set_clock(std::function<std::chrono::steady_clock::time_point()> clock) {
  std::lock_guard lock(mu_);
  clock_ = std::move(clock);
}

std::chrono::steady_clock::time_point SessionManager::now() const {
  std::lock_guard lock(mu_);
  return clock_();
}

const harness::WorldContext& SessionManager::world_for(const json& request) const {
  if (request.contains("world_id")) {
    const auto id = request.at("world_id").get<std::string>();
    for (const auto& w : worlds_) {
      if (w->world.world_id == id) return *w;
    }
    throw not_found("world " + id);
  }
  if (worlds_.size() != 1) {
    throw invalid_argument("world_id is required when serving several worlds");
  }
  return *worlds_.front();
}

json SessionManager::manifest_locked(const std::string& run_id) const {
  json m = {{"schema", harness::kRunSchema},
            {"run_id", run_id},
            {"agent_id", "external"},
            {"prompt_hash", harness::prompt_hash()},
            {"seed", config_.seed},
            {"tool_round_cap", config_.session.tool_round_cap},
            {"pin_rank", config_.session.pin_rank},
            {"alpha", config_.session.alpha},
            {"honeypot_seed", config_.session.seed},
            {"served", true},
            {"worlds", world_rows_},
            {"sessions", json::array()}};
  auto it = runs_.find(run_id);
  if (it != runs_.end()) {
    for (const auto& [key, sid] : it->second) {
      m["sessions"].push_back({{"session_id", sid},
                               {"world_id", key.world_id},
                               {"query_id", key.query_id},
                               {"condition", search::to_string(key.condition)},
                               {"rollout_index", key.rollout_index}});
    }
  }
  return m;
}

void SessionManager::write_manifest_locked(const std::string& run_id) const {
  if (config_.out_dir.empty()) return;
  write_json_file(config_.out_dir / run_id / "run.json", manifest_locked(run_id));
}

json SessionManager::manifest(const std::string& run_id) const {
  std::lock_guard lock(mu_);
  return manifest_locked(run_id);
}

ApiResponse SessionManager::create_session(const std::string& run_id, const json& request) {
  return guarded([&]() -> ApiResponse {
    if (!request.is_object()) throw invalid_argument("request body must be a JSON object");
    if (run_id.empty() || run_id.find('/') != std::string::npos || run_id == "." || run_id == "..") {
      throw invalid_argument("bad run id");
    }
    const auto& ctx = world_for(request);
    const auto query_id = request.at("query_id").get<std::string>();
    const auto* q = ctx.queries.find(query_id);
    if (q == nullptr) throw not_found("query " + query_id);
    const int rollout = request.value("rollout_index", 0);
    if (rollout < 0) throw invalid_argument("rollout_index must be >= 0");

    std::lock_guard lock(mu_);
    auto& keys = runs_[run_id];
    SessionKey key{ctx.world.world_id, query_id, Condition::kStandard, rollout};
    if (request.contains("condition")) {
      key.condition = search::condition_from_string(request.at("condition").get<std::string>());
    } else {
      // Server-side assignment; the second request for the same pairing
      // key gets the other condition.
      const auto h = derive_seed(config_.seed, "assign/" + run_id + "/" + key.world_id + "/" +
                                                   query_id + "/" + std::to_string(rollout));
      key.condition = (h & 1U) ? Condition::kAdversarial : Condition::kStandard;
      if (keys.count(key)) {
        key.condition = key.condition == Condition::kStandard ? Condition::kAdversarial
                                                              : Condition::kStandard;
      }
    }
    if (keys.count(key)) {
      return error_response(409, "duplicate_session",
                            "a session for this query, condition and rollout already exists",
                            {{"query_id", query_id}, {"rollout_index", rollout}});
    }
    const std::string sid = harness::session_id_for(config_.seed, run_id, key);
    const auto shared_ctx = *std::find_if(worlds_.begin(), worlds_.end(),
                                          [&](const auto& w) { return w.get() == &ctx; });
    auto session = std::make_shared<harness::Session>(shared_ctx, *q, key.condition, rollout,
                                                      config_.session, sid);
    session->mutable_trace().run_id = run_id;
    session->mutable_trace().agent_id = request.value("agent_id", "external");
    session->mutable_trace().prompt_hash = harness::prompt_hash();
    auto entry = std::make_shared<Entry>();
    entry->run_id = run_id;
    entry->session = std::move(session);
    entry->last_active = clock_();
    sessions_[sid] = std::move(entry);
    keys[key] = sid;
    write_manifest_locked(run_id);
    return {201,
            {{"session_id", sid},
             {"run_id", run_id},
             {"world_id", key.world_id},
             {"query_id", query_id},
             {"rollout_index", rollout},
             {"question", q->question},
             {"prompt", harness::render_prompt(q->question)},
             {"tool_round_cap", config_.session.tool_round_cap}}};
  });
}

std::shared_ptr<SessionManager::Entry> SessionManager::lookup(const std::string& session_id) {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) throw not_found("session " + session_id);
  return it->second;
}

void SessionManager::persist(Entry& e) {
  if (e.persisted || e.session->state() == SessionState::kOpen) return;
  e.persisted = true;
  if (config_.out_dir.empty()) return;
  const auto& t = e.session->trace();
  const SessionKey key{t.world_id, t.query_id, t.condition, t.rollout_index};
  harness::write_trace(harness::trace_path(config_.out_dir / e.run_id, e.run_id, key), t);
}

void SessionManager::touch_or_expire(Entry& e) {
  const auto t = now();
  if (e.session->state() == SessionState::kOpen && t - e.last_active > config_.ttl) {
    e.session->expire("idle for longer than the session ttl");
    persist(e);
  }
  e.last_active = t;
}

#define SYNTHWEB_LOCK_SESSION(entry)                                                       \
  std::unique_lock<std::mutex> call_lock((entry)->session->call_mutex(), std::try_to_lock); \
  if (!call_lock.owns_lock()) {                                                            \
    return error_response(409, "busy", "another call on this session is in progress");     \
  }

ApiResponse SessionManager::search(const std::string& session_id, const json& request) {
  return guarded([&]() -> ApiResponse {
    auto e = lookup(session_id);
    SYNTHWEB_LOCK_SESSION(e);
    touch_or_expire(*e);
    if (!request.is_object()) throw invalid_argument("request body must be a JSON object");
    const auto query = request.at("query").get<std::string>();
    const int k = request.value("k", 10);
    auto r = e->session->search(query, k);
    persist(*e);
    if (const auto* err = std::get_if<harness::ToolError>(&r)) return from_tool_error(*err);
    json results = json::array();
    for (const auto& x : std::get<std::vector<search::SearchResult>>(r)) {
      results.push_back(wire_result(x));
    }
    return {200, {{"results", results}}};
  });
}

ApiResponse SessionManager::read(const std::string& session_id, const std::string& article_id) {
  return guarded([&]() -> ApiResponse {
    auto e = lookup(session_id);
    SYNTHWEB_LOCK_SESSION(e);
    touch_or_expire(*e);
    auto r = e->session->read(article_id);
    persist(*e);
    if (const auto* err = std::get_if<harness::ToolError>(&r)) return from_tool_error(*err);
    return {200, harness::to_json(std::get<harness::ArticleView>(r))};
  });
}

ApiResponse SessionManager::answer(const std::string& session_id, const json& request) {
  return guarded([&]() -> ApiResponse {
    auto e = lookup(session_id);
    SYNTHWEB_LOCK_SESSION(e);
    touch_or_expire(*e);
    if (e->session->state() == SessionState::kExpired) {
      return error_response(410, "expired", "session expired: " + e->session->trace().status_reason);
    }
    if (e->session->state() != SessionState::kOpen) {
      return error_response(409, "closed", "session already answered");
    }
    if (!request.is_object()) throw invalid_argument("request body must be a JSON object");
    const auto& a = e->session->submit(request.at("raw_text").get<std::string>());
    json body = {{"state", "answered"},
                 {"parse_ok", a.parse_ok},
                 {"answer", a.answer},
                 {"confidence", nullptr},
                 {"parse_error", a.parse_error}};
    if (a.confidence) body["confidence"] = *a.confidence;
    persist(*e);
    return {200, body};
  });
}

ApiResponse SessionManager::status(const std::string& session_id) {
  return guarded([&]() -> ApiResponse {
    auto e = lookup(session_id);
    SYNTHWEB_LOCK_SESSION(e);
    touch_or_expire(*e);
    json body = session_status(*e->session);
    body["tool_round_cap"] = config_.session.tool_round_cap;
    return {200, body};
  });
}

#undef SYNTHWEB_LOCK_SESSION

int SessionManager::sweep() {
  std::vector<std::shared_ptr<Entry>> entries;
  {
    std::lock_guard lock(mu_);
    for (const auto& [id, e] : sessions_) entries.push_back(e);
  }
  int expired = 0;
  const auto t = now();
  for (const auto& e : entries) {
    std::unique_lock<std::mutex> call_lock(e->session->call_mutex(), std::try_to_lock);
    if (!call_lock.owns_lock()) continue;
    if (e->session->state() == SessionState::kOpen && t - e->last_active > config_.ttl) {
      e->session->expire("idle for longer than the session ttl");
      persist(*e);
      ++expired;
    }
  }
  return expired;
}

std::vector<harness::SessionTrace> SessionManager::finished(const std::string& run_id) const {
  std::vector<std::shared_ptr<Entry>> entries;
  {
    std::lock_guard lock(mu_);
    auto it = runs_.find(run_id);
    if (it == runs_.end()) return {};
    for (const auto& [key, sid] : it->second) entries.push_back(sessions_.at(sid));
  }
  std::vector<harness::SessionTrace> out;
  for (const auto& e : entries) {
    std::lock_guard call_lock(e->session->call_mutex());
    if (e->session->state() != SessionState::kOpen) out.push_back(e->session->trace());
  }
  return out;
}

// ------------------------------------------------------------------ server

struct Server::Impl {
  SessionManager& manager;
  httplib::Server http;
  std::thread thread;

  explicit Impl(SessionManager& m) : manager(m) {}
};

namespace {

void reply(httplib::Response& res, const ApiResponse& r) {
  res.status = r.status;
  res.set_content(r.body.dump() + "\n", "application/json");
}

std::optional<json> parse_body(const httplib::Request& req, httplib::Response& res) {
  try {
    return json::parse(req.body.empty() ? std::string("{}") : req.body);
  } catch (const json::parse_error& e) {
    reply(res, error_response(400, "malformed_request", "request body is not valid JSON",
                              {{"parser", e.what()}}));
    return std::nullopt;
  }
}

}  // namespace

Server::Server(SessionManager& manager) : impl_(std::make_unique<Impl>(manager)) {
  auto& http = impl_->http;
  auto& m = impl_->manager;
  http.Post(R"(/runs/([^/]+)/sessions)", [&m](const httplib::Request& req, httplib::Response& res) {
    if (auto body = parse_body(req, res)) reply(res, m.create_session(req.matches[1], *body));
  });
  http.Post(R"(/sessions/([^/]+)/search)", [&m](const httplib::Request& req, httplib::Response& res) {
    if (auto body = parse_body(req, res)) reply(res, m.search(req.matches[1], *body));
  });
  http.Get(R"(/sessions/([^/]+)/articles/([^/]+))",
           [&m](const httplib::Request& req, httplib::Response& res) {
             reply(res, m.read(req.matches[1], req.matches[2]));
           });
  http.Post(R"(/sessions/([^/]+)/answer)", [&m](const httplib::Request& req, httplib::Response& res) {
    if (auto body = parse_body(req, res)) reply(res, m.answer(req.matches[1], *body));
  });
  http.Get(R"(/sessions/([^/]+))", [&m](const httplib::Request& req, httplib::Response& res) {
    reply(res, m.status(req.matches[1]));
  });
  http.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    reply(res, error_response(res.status, res.status == 404 ? "no_route" : "http_error",
                              "request could not be routed"));
  });
  http.set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string what = "unknown error";
        try {
          std::rethrow_exception(ep);
        } catch (const std::exception& e) {
          what = e.what();
        } catch (...) {
        }
        reply(res, error_response(500, "internal", what));
      });
}

Server::~Server() { stop(); }

void Server::listen(const std::string& host, int port) {
  bool ok = port == 0 ? impl_->http.bind_to_any_port(host) > 0 : impl_->http.bind_to_port(host, port);
  if (!ok) throw Error(ErrorCode::kIo, "cannot bind " + host + ":" + std::to_string(port));
  impl_->http.listen_after_bind();
}

int Server::start(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->http.bind_to_any_port(host);
    if (bound <= 0) throw Error(ErrorCode::kIo, "cannot bind " + host);
  } else if (!impl_->http.bind_to_port(host, port)) {
    throw Error(ErrorCode::kIo, "cannot bind " + host + ":" + std::to_string(port));
  }
  impl_->thread = std::thread([this] { impl_->http.listen_after_bind(); });
  impl_->http.wait_until_ready();
  return bound;
}

void Server::wait() {
  if (impl_->thread.joinable()) impl_->thread.join();
}

void Server::interrupt() { impl_->http.stop(); }

void Server::stop() {
  if (!impl_) return;
  impl_->http.stop();
  wait();
}

}  // namespace synthweb::svc
