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
#include <string>
#include <vector>

#include "gapfill/config.hpp"
#include "gapfill/forecaster.hpp"
#include "gapfill/report.hpp"

namespace gapfill {

/// Builds a native model. Kinds: slp, padded_last, last_week,
/// linear_interpolation, arima, holt_winters, kalman, seasonal_naive, mstl,
/// knn. Throws ConfigError for unknown kinds or keys and InvalidArgument
/// for out-of-range values.
Model build_model(const ModelSpec& spec, std::size_t context_len = kDefaultContextLen);

/// A roster-wide model: its name, category and, for stochastic adapters, the
/// spec used to spawn a fresh process per run.
struct RosterEntry {
  Model model;
  std::string category;
  std::optional<AdapterSpec> per_run_adapter;
};

/// Native models then adapters, in config order. Throws ConfigError on
/// duplicate model names.
std::vector<RosterEntry> build_roster(const RunConfig& config);

/// The per-run instance of a stochastic adapter; GAPFILL_SEED and GAPFILL_RUN
/// are set in the child's environment.
Model adapter_for_run(const AdapterSpec& spec, std::uint64_t master_seed, std::size_t run_index);

/// Category lookup over a roster, falling back to `native_category`.
CategoryResolver roster_categories(const std::vector<RosterEntry>& roster);
CategoryResolver config_categories(const RunConfig& config);

}  // namespace gapfill
