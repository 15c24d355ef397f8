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

#include <stdexcept>
#include <string>
#include <string_view>

namespace synthweb {

enum class ErrorCode {
  kInvalidArgument,
  kNotFound,
  kConflict,
  kExpired,
  kGeneration,
  kIo,
  kSchema,
  kUnavailable,
  kInternal,
};

std::string_view to_string(ErrorCode code);

// Base exception for every failure raised by the library. The code is the
// machine-readable part; the CLI and the service both surface it verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline Error invalid_argument(const std::string& message) {
  return Error(ErrorCode::kInvalidArgument, message);
}

inline Error not_found(const std::string& message) {
  return Error(ErrorCode::kNotFound, message);
}

}  // namespace synthweb
