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
#include "gapfill/optimize.hpp"

namespace gapfill {

/// Fitted additive Holt-Winters state after consuming the whole history.
struct HoltWintersParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  std::size_t season_length = 0;
  double level = 0.0;
  double trend = 0.0;
  /// Seasonal effect per phase (time index mod m), normalised to sum zero.
  std::vector<double> seasonal;
  /// Phase of the first forecast step, i.e. history length mod m.
  std::size_t next_phase = 0;
  /// In-sample one-step-ahead sum of squared errors at the optimum.
  double sse = 0.0;
};

struct HoltWintersOptions {
  std::vector<double> start = {0.3, 0.05, 0.3};
  NelderMeadOptions optimizer{};
};

/// Additive triple exponential smoothing. (alpha, beta, gamma) minimise the
/// one-step SSE over [0,1]^3; the initial state comes from a classical
/// decomposition of the first two seasons. Constant histories short-circuit
/// to zero smoothing weights and a flat forecast.
HoltWintersParams holt_winters_fit(std::span<const double> history, std::size_t season_length,
                                   const HoltWintersOptions& options = {});

/// y[h] = level + (h+1) trend + seasonal[(next_phase + h) mod m].
std::vector<double> holt_winters_forecast(const HoltWintersParams& params, std::size_t horizon);

/// One-step SSE for fixed weights; exposed for tests and diagnostics.
double holt_winters_sse(std::span<const double> history, std::size_t season_length, double alpha, double beta,
                        double gamma);

class HoltWintersForecaster final : public Forecaster {
 public:
  explicit HoltWintersForecaster(std::size_t season_length = 48);
  std::string_view name() const override { return "Holt Winters"; }
  std::vector<double> forecast(std::span<const double> history, std::size_t horizon) const override;
  FitDiagnostics diagnostics(std::span<const double> history) const override;

 private:
  std::size_t season_length_;
};

}  // namespace gapfill
