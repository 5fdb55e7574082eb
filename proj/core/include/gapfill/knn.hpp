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

#include <cstddef>
#include <span>
#include <vector>

#include "gapfill/forecaster.hpp"

namespace gapfill {

/// Lag-embedding training set: row i pairs history[i, i+w) with history[i+w].
/// Rows are kept in chronological order, which fixes the tie-break.
struct KnnModel {
  std::size_t k = 5;
  std::size_t window = 48;
  std::vector<double> lags;     // row-major, rows() x window
  std::vector<double> targets;

  std::size_t rows() const noexcept { return targets.size(); }
};

KnnModel knn_fit(std::span<const double> history, std::size_t k = 5, std::size_t window = 48);

/// Recursive multi-step forecast; each step averages the targets of the k
/// nearest rows (Euclidean, ties to the lower row index) and feeds the
/// prediction back into the query.
std::vector<double> knn_forecast(const KnnModel& model, std::span<const double> history, std::size_t horizon);

class KnnForecaster final : public Forecaster {
 public:
  explicit KnnForecaster(std::size_t k = 5, std::size_t window = 48);
  std::string_view name() const override { return "KNN"; }
  std::vector<double> forecast(std::span<const double> history, std::size_t horizon) const override;

 private:
  std::size_t k_;
  std::size_t window_;
};

}  // namespace gapfill
