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

/// input = trend + sum(seasonal) + remainder, pointwise.
struct MstlDecomposition {
  std::vector<std::size_t> periods;
  std::vector<double> trend;
  /// One full-length component per period, in `periods` order.
  std::vector<std::vector<double>> seasonal;
  /// One zero-mean profile of length periods[k] per period; seasonal[k][i]
  /// equals profiles[k][i % periods[k]].
  std::vector<std::vector<double>> profiles;
  std::vector<double> remainder;
};

/// Multi-seasonal decomposition with classical seasonal extraction. Each
/// outer iteration re-estimates every seasonal profile from the input minus
/// the trend and the other seasonals (each phase sub-series smoothed by a
/// 3-point centred moving average across cycles, then averaged, re-centred
/// to zero mean),
/// followed by the trend as a centred moving average of window
/// max(periods) + 1 over the deseasonalised input.
MstlDecomposition mstl_decompose(std::span<const double> history, std::vector<std::size_t> periods = {48, 336},
                                 std::size_t iterations = 3);

/// Trend continued by its average first difference, seasonals continued
/// periodically, remainder forecast as zero.
std::vector<double> mstl_forecast(const MstlDecomposition& decomposition, std::size_t horizon);

/// Centred moving average with a symmetric window that shrinks at the series
/// ends (so straight lines pass through unchanged).
std::vector<double> centered_moving_average(std::span<const double> x, std::size_t window);

class MstlForecaster final : public Forecaster {
 public:
  explicit MstlForecaster(std::vector<std::size_t> periods = {48, 336});
  std::string_view name() const override { return "MSTL"; }
  /// Periods longer than half the history are dropped for that call.
  std::vector<double> forecast(std::span<const double> history, std::size_t horizon) const override;

 private:
  std::vector<std::size_t> usable_periods(std::size_t n) const;

  std::vector<std::size_t> periods_;
};

}  // namespace gapfill
