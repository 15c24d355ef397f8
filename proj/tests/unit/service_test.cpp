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

#include <atomic>
#include <set>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>

#include "fixtures.hpp"
#include "synthweb/evalpipe/grade.hpp"
#include "synthweb/harness/run.hpp"
#include "synthweb/jsonio.hpp"
#include "synthweb/stats/metrics.hpp"
#include "synthweb/svc/clients.hpp"
#include "synthweb/svc/service.hpp"

namespace synthweb::svc {
namespace {

using harness::Condition;

std::shared_ptr<const harness::WorldContext> ctx() { return testing::small_context(); }
const querygen::Query& query(std::size_t i = 0) { return ctx()->queries.queries.at(i); }

ServiceConfig config(std::uint64_t seed = 9) {
  ServiceConfig c;
  c.port = 0;
  c.seed = seed;
  c.session.seed = seed;
  return c;
}

std::string create(SessionManager& m, const std::string& run, const json& req) {
  const auto r = m.create_session(run, req);
  EXPECT_EQ(r.status, 201) << r.body.dump();
  return r.body.at("session_id").get<std::string>();
}

json search_req(const std::string& q, int k = 10) { return {{"query", q}, {"k", k}}; }

TEST(ServiceTest, ResponsesAreBlinded) {
  SessionManager m({ctx()}, config());
  for (const char* cond : {"standard", "adversarial"}) {
    const auto r = m.create_session("blind", {{"query_id", query().query_id}, {"condition", cond}});
    ASSERT_EQ(r.status, 201);
    EXPECT_FALSE(r.body.contains("condition"));
    const auto sid = r.body.at("session_id").get<std::string>();
    const auto page = m.search(sid, search_req(query().question));
    ASSERT_EQ(page.status, 200);
    ASSERT_EQ(page.body.at("results").size(), 10U);
    for (const auto& row : page.body.at("results")) {
      EXPECT_FALSE(row.contains("score"));
      EXPECT_FALSE(row.contains("pinned"));
      EXPECT_TRUE(row.contains("article_id"));
    }
    const auto st = m.status(sid);
    EXPECT_FALSE(st.body.contains("condition"));
    EXPECT_EQ(st.body.at("n_tool_calls"), 1);
    EXPECT_EQ(st.body.at("tool_round_cap"), 200);
  }
  // The operator view names the conditions.
  const auto man = m.manifest("blind");
  EXPECT_EQ(man.at("sessions").size(), 2U);
}

TEST(ServiceTest, ServerAssignsBothConditionsPerPairingKey) {
  SessionManager m({ctx()}, config());
  for (std::size_t i = 0; i < 8; ++i) {
    const json req = {{"query_id", query(i).query_id}, {"rollout_index", 1}};
    create(m, "assign", req);
    create(m, "assign", req);
    const auto third = m.create_session("assign", req);
    EXPECT_EQ(third.status, 409);
    EXPECT_EQ(third.body.at("code"), "duplicate_session");
  }
  std::map<std::string, std::set<std::string>> seen;
  const auto man = m.manifest("assign");
  for (const auto& s : man.at("sessions")) {
    seen[s.at("query_id").get<std::string>()].insert(s.at("condition").get<std::string>());
  }
  ASSERT_EQ(seen.size(), 8U);
  for (const auto& [q, conds] : seen) EXPECT_EQ(conds.size(), 2U) << q;
}

TEST(ServiceTest, ErrorsCarryCodeMessageDetail) {
  SessionManager m({ctx()}, config());
  auto r = m.create_session("e", {{"query_id", "nope"}});
  EXPECT_EQ(r.status, 404);
  for (const char* f : {"code", "message", "detail"}) EXPECT_TRUE(r.body.contains(f)) << f;
  EXPECT_EQ(m.create_session("a/b", {{"query_id", query().query_id}}).status, 400);
  EXPECT_EQ(m.create_session("e", json::array()).status, 400);
  EXPECT_EQ(m.search("missing", search_req("x")).status, 404);

  const auto sid = create(m, "e", {{"query_id", query().query_id}, {"condition", "standard"}});
  EXPECT_EQ(m.search(sid, search_req("   ")).status, 400);
  EXPECT_EQ(m.search(sid, {{"k", 3}}).status, 400);
  r = m.read(sid, "ffffffffffffffff");
  EXPECT_EQ(r.status, 404);
  EXPECT_EQ(r.body.at("code"), "no_such_article");
}

TEST(ServiceTest, AnswerOnceAndPersist) {
  testing::TempDir dir("svc");
  auto cfg = config();
  cfg.out_dir = dir.path();
  SessionManager m({ctx()}, cfg);
  const auto sid = create(m, "p", {{"query_id", query().query_id}, {"condition", "adversarial"}});
  auto r = m.answer(sid, {{"raw_text", "Answer: 7\nConfidence: 30%"}});
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(r.body.at("state"), "answered");
  EXPECT_EQ(r.body.at("confidence"), 30);
  EXPECT_EQ(m.answer(sid, {{"raw_text", "Answer: 8\nConfidence: 30%"}}).status, 409);
  EXPECT_EQ(m.search(sid, search_req("x")).status, 409);

  const auto man = read_json_file(dir.path() / "p" / "run.json");
  EXPECT_EQ(man.at("schema"), harness::kRunSchema);
  const auto traces = harness::load_traces(dir.path() / "p");
  ASSERT_EQ(traces.size(), 1U);
  EXPECT_EQ(traces[0].session_id, sid);
  EXPECT_EQ(traces[0].final->answer, "7");
}

TEST(ServiceTest, IdleSessionsExpire) {
  auto cfg = config();
  cfg.ttl = std::chrono::seconds(60);
  SessionManager m({ctx()}, cfg);
  auto t = std::chrono::steady_clock::now();
  m.set_clock([&t] { return t; });
  const auto a = create(m, "ttl", {{"query_id", query(0).query_id}});
  const auto b = create(m, "ttl", {{"query_id", query(1).query_id}});
  t += std::chrono::seconds(59);
  EXPECT_EQ(m.search(a, search_req("solar")).status, 200);
  t += std::chrono::seconds(30);
  // b has now been idle for 89 s.
  auto r = m.search(b, search_req("solar"));
  EXPECT_EQ(r.status, 410);
  EXPECT_EQ(r.body.at("code"), "expired");
  EXPECT_EQ(m.answer(b, {{"raw_text", "Answer: 1\nConfidence: 1"}}).status, 410);
  EXPECT_EQ(m.sweep(), 0);
  t += std::chrono::seconds(61);
  EXPECT_EQ(m.sweep(), 1);
  EXPECT_EQ(m.status(a).body.at("state"), "expired");
  EXPECT_EQ(m.finished("ttl").size(), 2U);
}

TEST(ServiceTest, ConcurrentCallsOnOneSessionAreSerializedOrRejected) {
  SessionManager m({ctx()}, config());
  const auto sid = create(m, "busy", {{"query_id", query().query_id}});
  std::atomic<int> ok{0}, busy{0}, other{0};
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&] {
      for (int i = 0; i < 40; ++i) {
        const auto r = m.search(sid, search_req(query().question, 5));
        if (r.status == 200) {
          ++ok;
        } else if (r.status == 409 && r.body.at("code") == "busy") {
          ++busy;
        } else {
          ++other;
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(other, 0);
  EXPECT_EQ(ok + busy, 160);
  EXPECT_EQ(m.status(sid).body.at("n_tool_calls"), ok.load());
}

// Random interleavings of tool calls across paired sessions.
TEST(ServiceProperty, SessionsStayIsolated) {
  SessionManager m({ctx()}, config(3));
  Rng rng(41);
  struct Live {
    std::string sid;
    std::string condition;
    std::set<std::string> seen;
  };
  std::vector<Live> live;
  for (std::size_t i = 0; i < 6; ++i) {
    for (const char* cond : {"standard", "adversarial"}) {
      live.push_back({create(m, "iso", {{"query_id", query(i).query_id}, {"condition", cond}}),
                      cond, {}});
    }
  }
  std::set<std::string> world_ids;
  for (const auto& a : ctx()->world.articles) world_ids.insert(a.article_id);
  std::map<std::string, std::string> honeypot_owner;

  for (int step = 0; step < 1000; ++step) {
    auto& s = live[rng.below(live.size())];
    if (rng.bernoulli(0.6)) {
      const auto& q = query(rng.below(6));
      const auto r = m.search(s.sid, search_req(q.question, static_cast<int>(rng.between(1, 10))));
      ASSERT_EQ(r.status, 200);
      for (const auto& row : r.body.at("results")) {
        const auto id = row.at("article_id").get<std::string>();
        s.seen.insert(id);
        if (world_ids.count(id)) continue;
        ASSERT_EQ(s.condition, "adversarial") << "standard session saw " << id;
        const auto [it, fresh] = honeypot_owner.emplace(id, s.sid);
        ASSERT_EQ(it->second, s.sid) << "honeypot shared between sessions";
      }
    } else {
      // Read something this session saw, or some other session's honeypot.
      std::string id;
      if (!honeypot_owner.empty() && rng.bernoulli(0.5)) {
        auto it = honeypot_owner.begin();
        std::advance(it, static_cast<long>(rng.below(honeypot_owner.size())));
        id = it->first;
      } else if (!s.seen.empty()) {
        auto it = s.seen.begin();
        std::advance(it, static_cast<long>(rng.below(s.seen.size())));
        id = *it;
      } else {
        continue;
      }
      const auto r = m.read(s.sid, id);
      const bool mine = world_ids.count(id) || honeypot_owner.at(id) == s.sid;
      ASSERT_EQ(r.status, mine ? 200 : 404) << id;
    }
  }
  EXPECT_FALSE(honeypot_owner.empty());
}

// ----------------------------------------------------------------- http

class ServedTest : public ::testing::Test {
 protected:
  void SetUp() override {
    manager_ = std::make_unique<SessionManager>(
        std::vector<std::shared_ptr<const harness::WorldContext>>{ctx()}, config(5));
    server_ = std::make_unique<Server>(*manager_);
    port_ = server_->start("127.0.0.1", 0);
    url_ = "http://127.0.0.1:" + std::to_string(port_);
  }
  void TearDown() override { server_->stop(); }

  std::unique_ptr<SessionManager> manager_;
  std::unique_ptr<Server> server_;
  int port_ = 0;
  std::string url_;
};

TEST_F(ServedTest, RoutesAndMalformedBodies) {
  const auto ep = Endpoint::parse(url_);
  auto r = http_post(ep, "/runs/h/sessions", {{"query_id", query().query_id}});
  ASSERT_EQ(r.status, 201);
  const auto sid = r.body.at("session_id").get<std::string>();
  EXPECT_EQ(http_post(ep, "/sessions/" + sid + "/search", search_req("solar", 3))
                .body.at("results")
                .size(),
            3U);
  EXPECT_EQ(http_get(ep, "/sessions/" + sid + "/articles/zzz").status, 404);
  EXPECT_EQ(http_get(ep, "/sessions/" + sid).body.at("n_tool_calls"), 2);
  EXPECT_EQ(http_get(ep, "/nowhere").body.at("code"), "no_route");

  httplib::Client raw("127.0.0.1", port_);
  const auto bad = raw.Post(("/sessions/" + sid + "/search").c_str(), "{nope", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
  EXPECT_EQ(json::parse(bad->body).at("code"), "malformed_request");
}

TEST_F(ServedTest, WireRunMatchesInProcessRun) {
  auto agent = harness::make_scripted_agent(harness::Policy::kCorroborating);
  harness::RunConfig rc;
  rc.run_id = "parity";
  rc.rollouts = 2;
  rc.seed = 5;
  rc.session.seed = 5;

  const auto ids = run_over_wire(url_, {ctx()}, *agent, rc);
  const auto wire = manager_->finished("parity");
  ASSERT_EQ(wire.size(), ids.size());
  const auto local = harness::run_benchmark({ctx()}, *agent, rc);
  ASSERT_EQ(local.traces.size(), wire.size());

  auto grades_of = [](const std::vector<harness::SessionTrace>& ts) {
    std::vector<eval::Grade> out;
    for (const auto& t : ts) {
      out.push_back(eval::grade(t, *ctx()->queries.find(t.query_id), ctx()->world,
                                ctx()->world.aliases));
    }
    return out;
  };
  const auto gw = grades_of(wire);
  const auto gl = grades_of(local.traces);
  for (std::size_t i = 0; i < gw.size(); ++i) {
    EXPECT_EQ(wire[i].session_id, ids[i]);
    EXPECT_EQ(eval::to_json(gw[i]), eval::to_json(gl[i]));
    ASSERT_EQ(wire[i].calls.size(), local.traces[i].calls.size());
    for (std::size_t j = 0; j < wire[i].calls.size(); ++j) {
      EXPECT_EQ(wire[i].calls[j].result_digest, local.traces[i].calls[j].result_digest);
    }
  }
  EXPECT_EQ(stats::build_report({gw, {}, true}), stats::build_report({gl, {}, true}));
}

// A tiny stand-in for remote model endpoints.
class StubEndpoint {
 public:
  StubEndpoint() {
    http_.Post("/step", [this](const httplib::Request& req, httplib::Response& res) {
      const auto body = json::parse(req.body);
      steps.push_back(body);
      json out;
      if (body.at("step") == 0) {
        out = {{"action", "search"}, {"query", body.at("question")}, {"k", 3}};
      } else if (body.at("step") == 1) {
        out = {{"action", "read"},
               {"article_id", body.at("last_result").at("results").at(0).at("article_id")}};
      } else {
        out = {{"action", "answer"}, {"raw_text", "Answer: 3\nConfidence: 20%"}};
      }
      res.set_content(out.dump(), "application/json");
    });
    http_.Post("/probe", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(json{{"answer", "no idea"}}.dump(), "application/json");
    });
    http_.Post("/judge", [](const httplib::Request& req, httplib::Response& res) {
      const auto body = json::parse(req.body);
      res.set_content(json{{"correct", body.at("agent_answer") == "close enough"},
                           {"rationale", "stub"}}
                          .dump(),
                      "application/json");
    });
    http_.Post("/broken", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("<html>", "text/html");
    });
    port_ = http_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { http_.listen_after_bind(); });
    http_.wait_until_ready();
  }
  ~StubEndpoint() {
    http_.stop();
    thread_.join();
  }
  std::string url(const std::string& path) const {
    return "http://127.0.0.1:" + std::to_string(port_) + path;
  }
  std::vector<json> steps;

 private:
  httplib::Server http_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(ServedTest, StepProtocolAgent) {
  StubEndpoint stub;
  HttpAgentClient agent(stub.url("/step"));
  EXPECT_EQ(agent.id(), "external:" + stub.url("/step"));
  harness::RunConfig rc;
  rc.run_id = "steps";
  rc.rollouts = 1;
  rc.conditions = {Condition::kAdversarial};
  harness::WorldContext one = *ctx();
  one.queries.queries.resize(1);
  const auto ids = run_over_wire(url_, {std::make_shared<const harness::WorldContext>(one)}, agent, rc);
  ASSERT_EQ(ids.size(), 1U);
  const auto traces = manager_->finished("steps");
  ASSERT_EQ(traces.size(), 1U);
  EXPECT_EQ(traces[0].n_tool_calls(), 2);
  EXPECT_TRUE(traces[0].honeypot_read);
  EXPECT_EQ(traces[0].final->answer, "3");
  ASSERT_EQ(stub.steps.size(), 3U);
  EXPECT_EQ(stub.steps[2].at("n_tool_calls"), 2);
  EXPECT_EQ(stub.steps[2].at("last_action").at("action"), "read");
}

TEST(ClientTest, ProbeAndJudge) {
  StubEndpoint stub;
  HttpProbe probe(stub.url("/probe"));
  EXPECT_EQ(probe.answer("What?"), "no idea");
  HttpJudge judge(stub.url("/judge"));
  EXPECT_TRUE(judge.judge({"q", "close enough", "exact", {}}).correct);
  EXPECT_FALSE(judge.judge({"q", "far off", "exact", {}}).correct);
  HttpProbe broken(stub.url("/broken"));
  try {
    broken.answer("x");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnavailable);
  }
  HttpProbe nobody("http://127.0.0.1:1/probe");
  EXPECT_THROW(nobody.answer("x"), Error);
}

TEST(ClientTest, EndpointParsing) {
  auto ep = Endpoint::parse("http://localhost:8080/v1/agent/");
  EXPECT_EQ(ep.origin, "http://localhost:8080");
  EXPECT_EQ(ep.prefix, "/v1/agent");
  EXPECT_EQ(Endpoint::parse("https://example.org").prefix, "");
  EXPECT_THROW(Endpoint::parse("ftp://x"), Error);
  EXPECT_THROW(Endpoint::parse("localhost:80"), Error);
}

}  // namespace
}  // namespace synthweb::svc
