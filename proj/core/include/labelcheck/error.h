// Copyright (c) 2026 labelcheck authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LABELCHECK_ERROR_H_
#define LABELCHECK_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace labelcheck {

enum class ErrorCode {
  kInvalidArgument,
  kUnknownUnit,
  kBadInventory,
  kBadMagic,
  kTruncatedPayload,
  kDimensionOverflow,
  kNotNormalized,
  kBlankInReference,
  kDimensionMismatch,
  kNoPath,
  kBeamCollapse,
  kExplosionGuard,
  kInsufficientPool,
  kUnsortedInput,
  kOverlappingCandidates,
  kSchemaViolation,
  kFileMissing,
  kIoError,
  kEmptyReference,
  kRegionTooSmall,
  kBadImage,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception type; callers
// branch on code() rather than on the message text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by metadata loading; pointer() is an RFC 6901 JSON pointer to the
// offending value.
class SchemaViolation : public Error {
 public:
  SchemaViolation(std::string pointer, const std::string& message)
      : Error(ErrorCode::kSchemaViolation, pointer + ": " + message),
        pointer_(std::move(pointer)) {}

  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

}  // namespace labelcheck

#endif  // LABELCHECK_ERROR_H_
