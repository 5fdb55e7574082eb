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

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gapfill/engine.hpp"

namespace gapfill {

enum class Metric { kMae, kMape, kMse, kRmse, kSmape };

inline constexpr std::array<Metric, 5> kAllMetrics{Metric::kMae, Metric::kMape, Metric::kMse, Metric::kRmse,
                                                   Metric::kSmape};

/// "MAE", "MAPE", "MSE", "RMSE", "SMAPE".
std::string_view metric_name(Metric m);
std::optional<Metric> parse_metric(std::string_view name);

struct MetricSet {
  double mae = 0.0;
  double mape = 0.0;
  double mse = 0.0;
  double rmse = 0.0;
  double smape = 0.0;
  std::size_t n_scored = 0;
  /// Points left out of MAPE because |truth| < 1e-8.
  std::size_t n_skipped_mape = 0;

  double get(Metric m) const;
};

inline constexpr double kMapeZeroThreshold = 1e-8;

MetricSet score_gap(std::span<const double> truth, std::span<const double> imputed);

struct ModelAggregate {
  std::string model;
  /// Households with at least one scored gap.
  std::size_t households = 0;
  std::size_t runs = 0;
  std::size_t scored_cells = 0;
  std::size_t failures = 0;
  /// Empty when every cell of the model failed.
  std::optional<std::array<double, 5>> mean;
  std::optional<std::array<double, 5>> sd;

  bool all_failed() const noexcept { return !mean.has_value(); }
};

/// Models sorted by name.
struct AggregateReport {
  std::vector<ModelAggregate> models;
  std::size_t households = 0;
  std::size_t runs = 0;
};

/// Gap metrics are averaged within (household, run), then over runs, then
/// across households (mean and population SD). FAILED cells are counted and
/// left out. Throws EmptyInput when there are no cells.
AggregateReport aggregate(const std::vector<ResultCell>& cells);

}  // namespace gapfill
