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

/// Straight-line extrapolation: OLS line through the trailing `fit_window`
/// points, continued `horizon` steps.
std::vector<double> slp_forecast(std::span<const double> history, std::size_t horizon, std::size_t fit_window = 48);
std::vector<double> padded_last_forecast(std::span<const double> history, std::size_t horizon);
/// output[i] = history[n - period + (i mod period)].
std::vector<double> last_week_forecast(std::span<const double> history, std::size_t horizon,
                                       std::size_t period = 336);
/// Straight line between the observations bracketing the gap.
std::vector<double> linear_interpolation_impute(const MeterSeries& series, const Gap& gap);

class SlpForecaster final : public Forecaster {
 public:
  explicit SlpForecaster(std::size_t fit_window = 48);
  std::string_view name() const override { return "SLP"; }
  std::vector<double> forecast(std::span<const double> history, std::size_t horizon) const override;
  FitDiagnostics diagnostics(std::span<const double> history) const override;

 private:
  std::size_t fit_window_;
};

class PaddedLastForecaster final : public Forecaster {
 public:
  std::string_view name() const override { return "Padded Last"; }
  std::vector<double> forecast(std::span<const double> history, std::size_t horizon) const override;
};

class LastWeekForecaster final : public Forecaster {
 public:
  explicit LastWeekForecaster(std::size_t period = 336);
  std::string_view name() const override { return "Last Week"; }
  std::vector<double> forecast(std::span<const double> history, std::size_t horizon) const override;

 private:
  std::size_t period_;
};

class LinearInterpolationImputer final : public DirectImputer {
 public:
  std::string_view name() const override { return "Linear Interpolation"; }
  std::vector<double> impute(const MeterSeries& series, const Gap& gap) const override;
};

}  // namespace gapfill
