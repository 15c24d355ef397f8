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
#include <map>
#include <set>
#include <string>
#include <vector>

#include "synthweb/error.hpp"
#include "synthweb/rng.hpp"
#include "synthweb/worldgen/realizer.hpp"
#include "synthweb/worldgen/types.hpp"

namespace synthweb::worldgen {

// Raised when the realizer fails mid-generation. `provenance` records the
// seed, versions and how far generation got.
class GenerationError : public Error {
 public:
  GenerationError(const std::string& message, json provenance)
      : Error(ErrorCode::kGeneration, message), provenance_(std::move(provenance)) {}
  const json& provenance() const { return provenance_; }

 private:
  json provenance_;
};

// Low band U[0.1, 0.4] with probability `low_cred_fraction`, else U[0.6, 0.9].
double assign_credibility(Rng& rng, double low_cred_fraction);

// Draws from the requested band directly.
double credibility_in_band(Rng& rng, bool low);

// Sites with exactly round(f * n) low-credibility members and site-type
// counts from largest-remainder apportionment of the weights.
std::vector<SiteProfile> generate_sites(const WorldConfig& config, ContentRealizer& realizer,
                                        Rng& rng);

// One cluster per taxonomy entry. Subtopic counts follow
// config.subtopics_per_topic; dates fall inside the configured timeline.
std::vector<TopicCluster> generate_topic_clusters(Rng& rng,
                                                  const std::vector<std::string>& taxonomy,
                                                  ContentRealizer& realizer,
                                                  const WorldConfig& config);

// Articles for one cluster, sorted by timestamp. Misinformation-bearing
// articles go to low-credibility sites; none are produced when every site is
// high-credibility.
std::vector<Article> realize_articles(const TopicCluster& cluster,
                                      const std::vector<SiteProfile>& sites, Rng& rng,
                                      const WorldConfig& config, ContentRealizer& realizer);

WorldBundle generate_world(const WorldConfig& config, ContentRealizer& realizer);

struct ContentStats {
  std::size_t sites = 0;
  std::size_t articles = 0;
  double mean_length = 0.0;
  double mean_ttr = 0.0;
  double low_cred_fraction = 0.0;
  std::map<SiteType, double> site_type_pct;  // 0..100

  json to_json() const;
};

ContentStats content_stats(const WorldBundle& world);

// ------------------------------------------------------------------ bundle IO

// Writes world.json, articles.jsonl, aliases.json and MANIFEST.
void save_world(const WorldBundle& world, const std::filesystem::path& dir);

// With verify_id, a bundle whose content no longer hashes to its recorded
// world_id is rejected (kSchema).
WorldBundle load_world(const std::filesystem::path& dir, bool verify_id = true);

// ------------------------------------------------------------------ validation

struct Finding {
  std::string code;     // "dangling_citation", "credibility_band", ...
  std::string subject;  // offending id
  std::string message;
};

// Every world invariant; an empty result means the bundle is valid.
std::vector<Finding> validate_world(const WorldBundle& world);

}  // namespace synthweb::worldgen
