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

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gapfill/timeseries.hpp"

namespace gapfill::textio {

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

/// Strict full-string decimal parse; nullopt on any trailing garbage.
std::optional<double> parse_double(std::string_view text);
std::optional<std::uint64_t> parse_u64(std::string_view text);

/// Accepts `YYYY-MM-DD[ T]HH:MM[:SS[.fff...]][Z]`, UTC. Fractional seconds
/// are kept at millisecond resolution.
std::optional<std::chrono::sys_time<std::chrono::milliseconds>> parse_timestamp(std::string_view text);
/// `YYYY-MM-DD HH:MM:SS`.
std::string format_timestamp(Timestamp t);

std::string_view trim(std::string_view s) noexcept;

/// RFC-4180 style field splitting (double-quoted fields, "" escapes).
std::vector<std::string> split_csv_line(std::string_view line);
/// Quotes a field only when it contains a comma, quote or newline.
std::string csv_field(std::string_view field);

}  // namespace gapfill::textio
