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
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gapfill/config.hpp"
#include "gapfill/gapgen.hpp"
#include "gapfill/metrics.hpp"

namespace gapfill {

/// Seeded choice of `count` ids without replacement, returned sorted. The
/// stream is independent of gap placement.
std::vector<std::string> sample_meters(std::vector<std::string> ids, std::size_t count, std::uint64_t seed);

/// Ingested or synthetic series, not yet anonymized or sampled.
std::vector<MeterSeries> load_series(const RunConfig& config);

/// Anonymizes and samples according to the config. When the config names a
/// gap plan, the plan's meters are used instead of a sample.
std::vector<MeterSeries> prepare_series(const RunConfig& config);

struct RunOptions {
  /// Worker threads; overrides the config when set.
  std::optional<std::size_t> jobs;
  std::function<void(std::string_view)> log;
};

struct RunSummary {
  std::filesystem::path out_dir;
  std::size_t cells = 0;
  std::size_t failed_cells = 0;
  AggregateReport report;
};

/// The whole benchmark: data, anonymization, sampling, gap plan, imputation
/// of every (model, gap, run), scoring and reports. Artifacts go to
/// `config.output_dir`, which holds a PARTIAL marker until the run succeeds.
/// `config_text` is recorded in the manifest.
RunSummary execute_run(const RunConfig& config, std::string_view config_text, const RunOptions& options = {});

std::string_view library_version() noexcept;

/// Number of worker threads for a requested count (0 = hardware).
std::size_t resolve_jobs(std::size_t requested);

}  // namespace gapfill
