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
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "synthweb/dates.hpp"
#include "synthweb/querygen/query.hpp"
#include "synthweb/rng.hpp"
#include "synthweb/worldgen/types.hpp"

namespace synthweb::search {

inline constexpr int kDefaultDim = 256;
inline constexpr double kBm25K1 = 1.2;
inline constexpr double kBm25B = 0.75;
inline constexpr std::uint32_t kIndexFormatVersion = 1;

struct Posting {
  std::uint32_t doc = 0;
  std::uint32_t tf = 0;
  std::vector<std::uint32_t> positions;
  bool operator==(const Posting&) const = default;
};

struct DocInfo {
  std::string article_id;
  std::string title;
  std::string snippet;
  std::string domain;
  DateTime timestamp{};
  std::uint32_t length = 0;  // tokens in title + body
  bool operator==(const DocInfo&) const = default;
};

// Feature-hashed unigram + character-trigram vector, L2-normalized. Empty
// text gives the zero vector.
std::vector<float> embed(std::string_view text, int dim = kDefaultDim);
double cosine(const std::vector<float>& a, const std::vector<float>& b);

// alpha * lexical + (1 - alpha) * dense; alpha must lie in [0, 1].
double fuse(double lexical_norm, double dense_norm, double alpha = 0.5);

// Immutable after build; safe to share across threads.
class SearchIndex {
 public:
  static SearchIndex build(const worldgen::WorldBundle& world, int dim = kDefaultDim);

  const std::string& world_id() const { return world_id_; }
  int dim() const { return dim_; }
  std::size_t size() const { return docs_.size(); }
  const DocInfo& doc(std::size_t i) const { return docs_[i]; }
  std::optional<std::size_t> find(std::string_view article_id) const;
  const std::vector<Posting>* postings(std::string_view term) const;
  std::size_t term_count() const { return terms_.size(); }
  double avg_doc_length() const { return avgdl_; }
  std::span<const float> embedding(std::size_t i) const;

  double idf(std::string_view term) const;
  // BM25 of one indexed document for the (deduplicated) query terms.
  double lexical_score(const std::vector<std::string>& query_terms, std::size_t doc) const;
  // BM25 of unindexed text scored with this index's collection statistics.
  double lexical_score_external(const std::vector<std::string>& query_terms,
                                std::string_view text) const;
  std::vector<double> lexical_scores(const std::vector<std::string>& query_terms) const;

  void save(const std::filesystem::path& path) const;
  // Throws kSchema on a bad magic/version or when the stored world id differs
  // from `expected_world_id` (if given).
  static SearchIndex load(const std::filesystem::path& path,
                          std::string_view expected_world_id = {});

  bool operator==(const SearchIndex& o) const;

 private:
  std::string world_id_;
  int dim_ = kDefaultDim;
  std::vector<DocInfo> docs_;
  std::unordered_map<std::string, std::vector<Posting>> terms_;
  std::vector<float> embeddings_;  // docs_.size() * dim_
  std::unordered_map<std::string, std::size_t> by_id_;
  double avgdl_ = 0.0;

  void finish();
};

// Query terms as the index sees them: tokenized and deduplicated in order.
std::vector<std::string> query_terms(std::string_view query);

// ----------------------------------------------------------------- sessions

enum class Condition { kStandard, kAdversarial };

std::string_view to_string(Condition c);
Condition condition_from_string(std::string_view s);

struct Honeypot {
  worldgen::Article article;  // is_honeypot = true
  std::string domain;
  std::string honeypot_answer;
};

struct SessionOverlay {
  std::string session_id;
  Condition condition = Condition::kStandard;
  std::optional<Honeypot> honeypot;
  int pin_rank = 0;
  bool first_query_served = false;
};

struct SearchResult {
  int rank = 0;
  std::string article_id;
  std::string title;
  std::string snippet;
  std::string domain;
  double score = 0.0;
  bool pinned = false;
};

struct SearchOptions {
  int k = 10;
  double alpha = 0.5;
};

// Fused ranking; mutates only overlay.first_query_served. In Adversarial mode
// the first call pins the honeypot at min(pin_rank, k - 1); later calls rank
// it by its fused score under the same per-query normalization as the world
// documents.
std::vector<SearchResult> search(const SearchIndex& index, SessionOverlay& overlay,
                                 std::string_view query, const SearchOptions& opts = {});

// Honeypot tailored to `q`, asserting a specific false answer. Deterministic
// in `rng`.
Honeypot make_honeypot(const querygen::Query& q, const worldgen::WorldBundle& world, Rng& rng);

}  // namespace synthweb::search
