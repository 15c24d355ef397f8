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
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace synthweb {

using json = nlohmann::json;

std::string read_file(const std::filesystem::path& path);

// Writes through a sibling temp file and renames, so readers never observe a
// half-written artifact.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& value);

std::vector<json> read_jsonl_file(const std::filesystem::path& path);
void write_jsonl_file(const std::filesystem::path& path, const std::vector<json>& rows);

// Throws kSchema when `doc["schema"]` is missing or differs from `expected`.
void require_schema(const json& doc, std::string_view expected, std::string_view what);

}  // namespace synthweb
