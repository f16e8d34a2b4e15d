// Copyright 2026 The regenum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace regenum {

enum class ErrorCode {
  kDisconnected,
  kDegenerateOrder,
  kInfeasibleSpec,
  kOrderMismatch,
  kParseError,
  kUnknownTask,
  kOracleScaleExceeded,
  kJobMismatch,
  kMissingData,
  kProtocol,
  kIo,
  kInvalidArgument,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDisconnected: return "Disconnected";
    case ErrorCode::kDegenerateOrder: return "DegenerateOrder";
    case ErrorCode::kInfeasibleSpec: return "InfeasibleSpec";
    case ErrorCode::kOrderMismatch: return "OrderMismatch";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kUnknownTask: return "UnknownTask";
    case ErrorCode::kOracleScaleExceeded: return "OracleScaleExceeded";
    case ErrorCode::kJobMismatch: return "JobMismatch";
    case ErrorCode::kMissingData: return "MissingData";
    case ErrorCode::kProtocol: return "Protocol";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

// All library failures are reported as Error; code() tells them apart.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : Error(ErrorCode::kParseError,
              what + " at byte " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace regenum
