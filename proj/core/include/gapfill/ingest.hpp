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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gapfill/timeseries.hpp"

namespace gapfill {

/// Column mapping for half-hourly consumption exports. The defaults follow
/// the London smart-meter export (LCLid, DateTime, "KWH/hh (per half hour)").
struct IngestConfig {
  std::filesystem::path path;
  std::string id_column = "LCLid";
  std::string time_column = "DateTime";
  std::string value_column = "KWH/hh (per half hour)";
  Duration expected_step = kHalfHour;
  /// Accepted distance between a timestamp and its grid slot.
  std::chrono::milliseconds grid_tolerance{1000};

  void validate() const;
};

/// One series per distinct meter id, ordered by id. Grid slots are multiples
/// of `expected_step` since the Unix epoch; slots with no row, an empty
/// value or the literal `Null` become missing.
std::vector<MeterSeries> ingest_csv(const IngestConfig& config);
std::vector<MeterSeries> ingest_csv(std::istream& in, const IngestConfig& config);

/// Normalised long-format columns written by `write_series_csv`.
IngestConfig normalized_ingest_config(std::filesystem::path path);

/// Writes `meter_id,timestamp,kwh`, one row per grid slot, missing values
/// as an empty field. Present values use shortest round-trip decimals.
void write_series_csv(std::ostream& out, const std::vector<MeterSeries>& series);
void write_series_csv(const std::filesystem::path& path, const std::vector<MeterSeries>& series);

}  // namespace gapfill
