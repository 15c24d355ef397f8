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

#include <sys/wait.h>

#include <cstdio>
#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "synthweb/jsonio.hpp"

namespace synthweb {
namespace {

struct Outcome {
  int exit_code = -1;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  Outcome run(const std::string& args) {
    const auto err_path = dir_.path() / "stderr.txt";
    const std::string cmd = std::string(SYNTHWEB_CLI) + " " + args + " 2>" + err_path.string();
    Outcome o;
    FILE* p = popen(cmd.c_str(), "r");
    if (p == nullptr) return o;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) o.out.append(buf, n);
    const int status = pclose(p);
    o.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    o.err = read_file(err_path);
    return o;
  }
  std::string path(const std::string& name) const { return (dir_.path() / name).string(); }

  testing::TempDir dir_{"cli"};
};

TEST_F(CliTest, PipelineEndToEnd) {
  auto o = run("generate --seed 3 --sites 12 --topics 2 --min-articles 20 --max-articles 24 --out " +
               path("world"));
  ASSERT_EQ(o.exit_code, 0) << o.err;
  const auto gen = json::parse(o.out);
  EXPECT_TRUE(gen.contains("world_id"));

  o = run("queries --world " + path("world") +
          " --target factual=2,comparison=2,timeline=2,evaluation=2 --probe stub");
  ASSERT_EQ(o.exit_code, 0) << o.err;
  EXPECT_EQ(read_jsonl_file(path("world/queries.jsonl")).size(), 9U);  // header + 8

  o = run("validate --world " + path("world") + " --queries " + path("world/queries.jsonl"));
  EXPECT_EQ(o.exit_code, 0) << o.out << o.err;
  EXPECT_TRUE(o.out.empty());

  o = run("run --world " + path("world") + " --agent anchored --rollouts 2 --out " + path("run"));
  ASSERT_EQ(o.exit_code, 0) << o.err;
  EXPECT_EQ(read_json_file(path("run/run.json")).at("n_sessions"), 32);
  EXPECT_TRUE(std::filesystem::exists(path("run/inputs.json")));

  o = run("grade --run " + path("run"));
  ASSERT_EQ(o.exit_code, 0) << o.err;
  o = run("report --run " + path("run") + " --out " + path("report"));
  ASSERT_EQ(o.exit_code, 0) << o.err;
  const auto md = read_file(path("report/report.md"));
  for (const char* t : {"Table 1.", "Table 2.", "Table 3.", "Table 4.", "Table 5.", "Table 6."}) {
    EXPECT_NE(md.find(t), std::string::npos) << t;
  }
}

TEST_F(CliTest, ValidateReportsDanglingCitation) {
  const auto o = run(std::string("validate --world ") + SYNTHWEB_FIXTURE_DIR +
                     "/dangling_citation_world");
  EXPECT_EQ(o.exit_code, 1);
  bool found = false;
  std::istringstream lines(o.out);
  for (std::string line; std::getline(lines, line);) {
    const auto f = json::parse(line);
    if (f.at("code") == "dangling_citation") {
      found = true;
      EXPECT_EQ(f.at("subject"), "fa24374fe1029543");
    }
  }
  EXPECT_TRUE(found) << o.out;
}

TEST_F(CliTest, ErrorsAreSingleLineJson) {
  const auto o = run("validate --world " + path("missing"));
  EXPECT_EQ(o.exit_code, 2);
  ASSERT_FALSE(o.err.empty());
  EXPECT_EQ(o.err.find('\n'), o.err.size() - 1);
  const auto e = json::parse(o.err);
  EXPECT_TRUE(e.at("error").contains("code"));
  EXPECT_TRUE(e.at("error").contains("message"));

  EXPECT_NE(run("no-such-command").exit_code, 0);
  EXPECT_NE(run("run --world x --agent clever --out " + path("r")).exit_code, 0);
}

}  // namespace
}  // namespace synthweb
