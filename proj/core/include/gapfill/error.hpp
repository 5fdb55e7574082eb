/*
 * Copyright 2026 The gapfill Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gapfill {

enum class ErrorKind {
  kInvalidArgument,
  kInsufficientContext,
  kParseError,
  kGridError,
  kDuplicateError,
  kTooFewValues,
  kInfeasiblePlan,
  kPlanMismatch,
  kPreexistingMissing,
  kHistoryTooShort,
  kEmptyHistory,
  kMissingEndpoint,
  kNonStationaryFit,
  kNumericalFailure,
  kAdapterTimeout,
  kAdapterMalformedResponse,
  kAdapterCrashed,
  kAdapterError,
  kLengthMismatch,
  kNonFiniteInput,
  kEmptyInput,
  kIoError,
  kConfigError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so
/// that callers (the engine in particular) can record it per gap.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace gapfill
