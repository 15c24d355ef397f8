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
#include <string>
#include <string_view>

namespace synthweb {

std::string sha256_hex(std::string_view bytes);

// First 128 bits of SHA-256, hex encoded (32 chars). Used for world ids,
// result digests and every other content address.
std::string digest128_hex(std::string_view bytes);

// 16 lowercase hex digits; the shape of article and session ids.
std::string hex64(std::uint64_t v);

}  // namespace synthweb
