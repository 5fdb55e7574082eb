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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "gapfill/rng.hpp"
#include "gapfill/timeseries.hpp"

namespace gapfill {

struct GapPlanParams {
  std::uint64_t seed = 0;
  std::size_t gaps_per_meter = 10;
  /// Lengths are drawn uniformly from 1..max_gap_len (48 = one day).
  std::size_t max_gap_len = 48;
  std::size_t context_len = kDefaultContextLen;
  std::size_t max_attempts = 10'000;

  bool operator==(const GapPlanParams&) const = default;
};

/// Per-meter gaps, sorted by start. Within a meter gaps are disjoint, at
/// least `context_len` apart, and have `context_len` clean points on both
/// sides.
struct GapPlan {
  GapPlanParams params;
  std::map<std::string, std::vector<Gap>> gaps;

  std::size_t total_gaps() const;
  bool operator==(const GapPlan&) const = default;
};

/// Draws the plan by rejection sampling on a per-meter random stream, so a
/// meter's gaps do not depend on which other meters are present.
GapPlan generate_plan(const std::vector<MeterSeries>& series, const GapPlanParams& params);

/// Length draws used by `generate_plan`, exposed for distribution checks.
std::size_t draw_gap_length(RandomStream& stream, std::size_t max_gap_len);

struct MaskedGap {
  Gap gap;
  std::vector<double> truth;

  bool operator==(const MaskedGap&) const = default;
};

struct MaskedDataset {
  std::vector<MeterSeries> masked;
  /// Keyed by meter id, gaps in plan order.
  std::map<std::string, std::vector<MaskedGap>> truth;

  const MeterSeries& series(const std::string& meter_id) const;
};

MaskedDataset apply_plan(const std::vector<MeterSeries>& series, const GapPlan& plan);
/// Restores ground truth into the masked series.
std::vector<MeterSeries> unmask(const MaskedDataset& dataset);

/// Manifest: one `# gapfill-plan seed=... ` header line, then
/// `meter_id,start_index,length` rows.
void write_plan_csv(std::ostream& out, const GapPlan& plan);
void write_plan_csv(const std::filesystem::path& path, const GapPlan& plan);
GapPlan read_plan_csv(std::istream& in);
GapPlan read_plan_csv(const std::filesystem::path& path);

}  // namespace gapfill
