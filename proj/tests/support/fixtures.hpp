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
#include <memory>
#include <string>

#include "synthweb/harness/session.hpp"
#include "synthweb/querygen/query.hpp"
#include "synthweb/worldgen/generator.hpp"

namespace synthweb::testing {

// About 90 articles over 4 topics.
worldgen::WorldConfig small_config(std::uint64_t seed);
// About 500 articles over 10 topics.
worldgen::WorldConfig bench_config(std::uint64_t seed);

worldgen::WorldBundle make_world(const worldgen::WorldConfig& config);
querygen::QuerySet make_queries(const worldgen::WorldBundle& world, std::uint64_t seed,
                                int per_type);

// Cached per process; built from small_config(seed) with 4 queries per type.
std::shared_ptr<const harness::WorldContext> small_context(std::uint64_t seed = 11);

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace synthweb::testing
