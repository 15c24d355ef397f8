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

#include <chrono>
#include <string>
#include <string_view>

namespace synthweb {

using Date = std::chrono::sys_days;
using DateTime = std::chrono::sys_seconds;

// YYYY-MM-DD
std::string format_date(Date d);
Date parse_date(std::string_view s);

// YYYY-MM-DDTHH:MM:SSZ
std::string format_datetime(DateTime t);
DateTime parse_datetime(std::string_view s);

// "March 14, 2024" -- the prose form used inside article bodies.
std::string format_long_date(Date d);
// Inverse of format_long_date; throws on anything else.
Date parse_long_date(std::string_view s);

std::string utc_now_iso();

}  // namespace synthweb
