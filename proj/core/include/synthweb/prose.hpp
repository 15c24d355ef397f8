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

#include <span>
#include <string>
#include <string_view>
#include <unordered_set>

#include "synthweb/rng.hpp"

// Seeded phrase banks and a small sentence grammar for filler prose.
namespace synthweb::prose {

enum class Bank {
  kNoun,
  kAdjective,
  kVerb,
  kAdverb,
  kPlace,
  kReportVerb,
  kFirstName,
  kSurname,
  kOrgWord,
  kNamePrefix,
  kEntityKind,
  kDomainWord,
  kEventNoun,
  kSubtopicStem,
};

std::span<const std::string_view> bank(Bank b);

// Draws words, preferring ones not yet used in the current article. The
// reuse probability controls lexical diversity (type-token ratio).
class WordPicker {
 public:
  WordPicker(Rng& rng, double reuse_probability) : rng_(rng), reuse_(reuse_probability) {}

  std::string_view pick(Bank b);
  void reset() { used_.clear(); }

 private:
  Rng& rng_;
  double reuse_;
  std::unordered_set<std::string_view> used_;
};

std::string capitalize(std::string_view s);

// One filler sentence; `hint` is a topic or subtopic phrase that some
// patterns mention.
std::string filler_sentence(WordPicker& words, Rng& rng, std::string_view hint);

// "Dr. Lena Okafor of the Halvorsen Policy Lab"
std::string fabricated_expert(Rng& rng);
// "the 2024 Halvorsen Grid Audit"
std::string fabricated_study(Rng& rng, std::string_view topic_word);
// "Halvorsen Policy Institute"
std::string fabricated_institute(Rng& rng);

}  // namespace synthweb::prose
