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

#include "gapfill/baselines.hpp"

#include <string>

#include "gapfill/error.hpp"

namespace gapfill {

namespace {

struct Line {
  double intercept;  // value at x = 0 (first point of the fit window)
  double slope;
};

Line fit_line(std::span<const double> y) {
  const auto n = static_cast<double>(y.size());
  const double x_mean = (n - 1.0) / 2.0;
  double y_mean = 0.0;
  for (double v : y) y_mean += v;
  y_mean /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double dx = static_cast<double>(i) - x_mean;
    sxy += dx * (y[i] - y_mean);
    sxx += dx * dx;
  }
  const double slope = sxy / sxx;
  return {y_mean - slope * x_mean, slope};
}

}  // namespace

std::vector<double> slp_forecast(std::span<const double> history, std::size_t horizon, std::size_t fit_window) {
  if (fit_window < 2) raise(ErrorKind::kHistoryTooShort, "SLP fit window must be at least 2");
  if (history.size() < fit_window) {
    raise(ErrorKind::kHistoryTooShort, "SLP needs " + std::to_string(fit_window) + " points, got " +
                                           std::to_string(history.size()));
  }
  const auto tail = history.last(fit_window);
  const Line line = fit_line(tail);
  // Anchor at the window mean so that a constant shift of the history
  // moves every forecast by the same constant.
  const double x_mean = (static_cast<double>(fit_window) - 1.0) / 2.0;
  const double y_mean = line.intercept + line.slope * x_mean;
  std::vector<double> out(horizon);
  for (std::size_t h = 0; h < horizon; ++h) {
    out[h] = y_mean + line.slope * (static_cast<double>(fit_window + h) - x_mean);
  }
  return out;
}

std::vector<double> padded_last_forecast(std::span<const double> history, std::size_t horizon) {
  if (history.empty()) raise(ErrorKind::kEmptyHistory, "padded last needs a non-empty history");
  return std::vector<double>(horizon, history.back());
}

std::vector<double> last_week_forecast(std::span<const double> history, std::size_t horizon, std::size_t period) {
  if (period == 0) raise(ErrorKind::kInvalidArgument, "period must be positive");
  if (history.size() < period) {
    raise(ErrorKind::kHistoryTooShort, "last week needs " + std::to_string(period) + " points, got " +
                                           std::to_string(history.size()));
  }
  const std::size_t base = history.size() - period;
  std::vector<double> out(horizon);
  for (std::size_t i = 0; i < horizon; ++i) out[i] = history[base + i % period];
  return out;
}

std::vector<double> linear_interpolation_impute(const MeterSeries& series, const Gap& gap) {
  gap.check_within(series.size());
  if (gap.start() == 0 || gap.end() >= series.size() || series.is_missing(gap.start() - 1) ||
      series.is_missing(gap.end())) {
    raise(ErrorKind::kMissingEndpoint, "gap at " + std::to_string(gap.start()) + " of '" + series.meter_id() +
                                           "' lacks an observed value on both sides");
  }
  const double left = series.value(gap.start() - 1);
  const double right = series.value(gap.end());
  const auto denom = static_cast<double>(gap.length() + 1);
  std::vector<double> out(gap.length());
  for (std::size_t i = 0; i < gap.length(); ++i) {
    out[i] = left + (right - left) * static_cast<double>(i + 1) / denom;
  }
  return out;
}

SlpForecaster::SlpForecaster(std::size_t fit_window) : fit_window_(fit_window) {
  if (fit_window_ < 2) raise(ErrorKind::kInvalidArgument, "SLP fit window must be at least 2");
}

std::vector<double> SlpForecaster::forecast(std::span<const double> history, std::size_t horizon) const {
  return slp_forecast(history, horizon, fit_window_);
}

FitDiagnostics SlpForecaster::diagnostics(std::span<const double> history) const {
  if (history.size() < fit_window_) return {};
  const Line line = fit_line(history.last(fit_window_));
  return {{"intercept", line.intercept}, {"slope", line.slope}};
}

std::vector<double> PaddedLastForecaster::forecast(std::span<const double> history, std::size_t horizon) const {
  return padded_last_forecast(history, horizon);
}

LastWeekForecaster::LastWeekForecaster(std::size_t period) : period_(period) {
  if (period_ == 0) raise(ErrorKind::kInvalidArgument, "period must be positive");
}

std::vector<double> LastWeekForecaster::forecast(std::span<const double> history, std::size_t horizon) const {
  return last_week_forecast(history, horizon, period_);
}

std::vector<double> LinearInterpolationImputer::impute(const MeterSeries& series, const Gap& gap) const {
  return linear_interpolation_impute(series, gap);
}

}  // namespace gapfill
