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
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "synthweb/harness/run.hpp"
#include "synthweb/harness/session.hpp"

namespace synthweb::svc {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::chrono::seconds ttl{30 * 60};
  harness::SessionConfig session;
  std::uint64_t seed = 0;
  // Each run gets {out_dir}/{run}/run.json and its finished traces under
  // {out_dir}/{run}/traces/; empty keeps them in memory only.
  std::filesystem::path out_dir;
};

// Failed calls carry {"code", "message", "detail"} with a 4xx/5xx status.
struct ApiResponse {
  int status = 200;
  json body;
};

ApiResponse error_response(int status, std::string code, std::string message,
                           json detail = json::object());

// Transport-independent session service; the HTTP server is a thin shell
// over it. Thread-safe.
class SessionManager {
 public:
  SessionManager(std::vector<std::shared_ptr<const harness::WorldContext>> worlds,
                 ServiceConfig config);

  // Request: {"query_id", "world_id"?, "condition"?, "rollout_index"?,
  // "agent_id"?}. Without a condition the server assigns one from the
  // pairing key. The response never reveals the condition.
  ApiResponse create_session(const std::string& run_id, const json& request);
  ApiResponse search(const std::string& session_id, const json& request);
  ApiResponse read(const std::string& session_id, const std::string& article_id);
  ApiResponse answer(const std::string& session_id, const json& request);
  ApiResponse status(const std::string& session_id);

  // Expires idle sessions; returns how many were expired.
  int sweep();
  // Traces of finished sessions for a run, ordered by pairing key.
  std::vector<harness::SessionTrace> finished(const std::string& run_id) const;
  // Server-side manifest: every session of the run with its condition.
  json manifest(const std::string& run_id) const;

  void set_clock(std::function<std::chrono::steady_clock::time_point()> clock);

 private:
  struct Entry {
    std::string run_id;
    std::shared_ptr<harness::Session> session;
    std::chrono::steady_clock::time_point last_active;
    bool persisted = false;
  };

  std::shared_ptr<Entry> lookup(const std::string& session_id);
  // Caller holds the session's call mutex.
  void persist(Entry& e);
  void touch_or_expire(Entry& e);
  json manifest_locked(const std::string& run_id) const;
  void write_manifest_locked(const std::string& run_id) const;
  std::chrono::steady_clock::time_point now() const;
  const harness::WorldContext& world_for(const json& request) const;

  std::vector<std::shared_ptr<const harness::WorldContext>> worlds_;
  ServiceConfig config_;
  json world_rows_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::map<std::string, std::map<harness::SessionKey, std::string>> runs_;
  std::function<std::chrono::steady_clock::time_point()> clock_;
};

// HTTP front end:
//   POST /runs/{run}/sessions
//   POST /sessions/{id}/search          {"query", "k"}
//   GET  /sessions/{id}/articles/{aid}
//   POST /sessions/{id}/answer          {"raw_text"}
//   GET  /sessions/{id}
class Server {
 public:
  explicit Server(SessionManager& manager);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds and serves until stop(); port 0 binds a free port.
  void listen(const std::string& host, int port);
  // Binds, then serves on a background thread. Returns the bound port.
  int start(const std::string& host, int port);
  // Blocks until a started server stops.
  void wait();
  // Asks the accept loop to exit without joining; usable from a signal
  // handler while another thread waits.
  void interrupt();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace synthweb::svc
