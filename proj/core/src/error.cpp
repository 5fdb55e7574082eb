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

#include "gapfill/error.hpp"

namespace gapfill {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kInsufficientContext: return "InsufficientContext";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kGridError: return "GridError";
    case ErrorKind::kDuplicateError: return "DuplicateError";
    case ErrorKind::kTooFewValues: return "TooFewValues";
    case ErrorKind::kInfeasiblePlan: return "InfeasiblePlan";
    case ErrorKind::kPlanMismatch: return "PlanMismatch";
    case ErrorKind::kPreexistingMissing: return "PreexistingMissing";
    case ErrorKind::kHistoryTooShort: return "HistoryTooShort";
    case ErrorKind::kEmptyHistory: return "EmptyHistory";
    case ErrorKind::kMissingEndpoint: return "MissingEndpoint";
    case ErrorKind::kNonStationaryFit: return "NonStationaryFit";
    case ErrorKind::kNumericalFailure: return "NumericalFailure";
    case ErrorKind::kAdapterTimeout: return "AdapterTimeout";
    case ErrorKind::kAdapterMalformedResponse: return "AdapterMalformedResponse";
    case ErrorKind::kAdapterCrashed: return "AdapterCrashed";
    case ErrorKind::kAdapterError: return "AdapterError";
    case ErrorKind::kLengthMismatch: return "LengthMismatch";
    case ErrorKind::kNonFiniteInput: return "NonFiniteInput";
    case ErrorKind::kEmptyInput: return "EmptyInput";
    case ErrorKind::kIoError: return "IoError";
    case ErrorKind::kConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace gapfill
