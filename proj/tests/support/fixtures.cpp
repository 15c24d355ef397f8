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

#include "fixtures.hpp"

#include <map>
#include <mutex>
#include <random>

#include "synthweb/rng.hpp"

namespace synthweb::testing {

worldgen::WorldConfig small_config(std::uint64_t seed) {
  worldgen::WorldConfig c;
  c.seed = seed;
  c.n_sites = 20;
  c.n_topics = 4;
  c.articles_per_cluster = {20, 25};
  return c;
}

worldgen::WorldConfig bench_config(std::uint64_t seed) {
  worldgen::WorldConfig c;
  c.seed = seed;
  c.n_sites = 20;
  c.n_topics = 10;
  c.articles_per_cluster = {45, 55};
  return c;
}

worldgen::WorldBundle make_world(const worldgen::WorldConfig& config) {
  auto realizer = worldgen::make_template_realizer();
  return worldgen::generate_world(config, *realizer);
}

querygen::QuerySet make_queries(const worldgen::WorldBundle& world, std::uint64_t seed,
                                int per_type) {
  Rng rng(derive_seed(seed, "queries"));
  querygen::TypeTargets t = {{phrasing::QueryType::kFactual, per_type},
                             {phrasing::QueryType::kComparison, per_type},
                             {phrasing::QueryType::kTimeline, per_type},
                             {phrasing::QueryType::kEvaluation, per_type}};
  return querygen::generate_queries(world, rng, t);
}

std::shared_ptr<const harness::WorldContext> small_context(std::uint64_t seed) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::shared_ptr<const harness::WorldContext>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[seed];
  if (!slot) {
    auto world = make_world(small_config(seed));
    auto qs = make_queries(world, seed, 4);
    slot = harness::WorldContext::make(std::move(world), std::move(qs));
  }
  return slot;
}

TempDir::TempDir(const std::string& tag) {
  std::random_device rd;
  path_ = std::filesystem::temp_directory_path() /
          ("synthweb-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace synthweb::testing
