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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace synthweb::text {

// ASCII lowercase; bytes >= 0x80 pass through untouched.
std::string to_lower(std::string_view s);

bool is_ascii_alnum(char c);

// Whitespace-delimited, lowercased, punctuation-stripped tokens. Tokens that
// are entirely punctuation vanish. This is the single token definition used
// for article length, type-token ratio and the lexical index.
std::vector<std::string> tokenize(std::string_view s);

std::size_t token_count(std::string_view s);

// unique tokens / total tokens; 0 for empty text.
double type_token_ratio(std::string_view s);

struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive
  std::size_t size() const { return end - begin; }
  bool operator==(const Span&) const = default;
};

// Sentence spans terminated by '.', '!' or '?' followed by whitespace or end
// of text. A '.' between two digits is not a terminator.
std::vector<Span> sentence_spans(std::string_view s);

// First sentence if it ends within max_chars, otherwise the longest prefix
// ending on a word boundary at or before max_chars.
std::string snippet(std::string_view body, std::size_t max_chars = 240);

std::string trim(std::string_view s);
std::string collapse_whitespace(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
bool contains_ci(std::string_view haystack, std::string_view needle);

// "1450" -> "1,450"; fractional digits kept as given.
std::string with_thousands(double value, int decimals);

}  // namespace synthweb::text
