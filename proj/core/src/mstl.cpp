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

#include "gapfill/mstl.hpp"

#include <algorithm>
#include <string>

#include "gapfill/error.hpp"

namespace gapfill {

std::vector<double> centered_moving_average(std::span<const double> x, std::size_t window) {
  const std::size_t n = x.size();
  const std::size_t half = window / 2;
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + x[i];
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t h = std::min({half, i, n - 1 - i});
    out[i] = (prefix[i + h + 1] - prefix[i - h]) / static_cast<double>(2 * h + 1);
  }
  return out;
}

namespace {

std::vector<double> seasonal_profile(std::span<const double> x, std::size_t period) {
  std::vector<double> profile(period);
  std::vector<double> sub;
  double total = 0.0;
  for (std::size_t j = 0; j < period; ++j) {
    sub.clear();
    for (std::size_t i = j; i < x.size(); i += period) sub.push_back(x[i]);
    const auto smoothed = centered_moving_average(sub, 3);
    double sum = 0.0;
    for (double v : smoothed) sum += v;
    profile[j] = sum / static_cast<double>(smoothed.size());
    total += profile[j];
  }
  const double mean = total / static_cast<double>(period);
  for (double& v : profile) v -= mean;
  return profile;
}

}  // namespace

MstlDecomposition mstl_decompose(std::span<const double> history, std::vector<std::size_t> periods,
                                 std::size_t iterations) {
  if (periods.empty()) raise(ErrorKind::kInvalidArgument, "MSTL needs at least one period");
  std::sort(periods.begin(), periods.end());
  periods.erase(std::unique(periods.begin(), periods.end()), periods.end());
  if (periods.front() < 2) raise(ErrorKind::kInvalidArgument, "MSTL periods must be at least 2");
  const std::size_t max_period = periods.back();
  if (history.size() < 2 * max_period) {
    raise(ErrorKind::kHistoryTooShort, "MSTL needs " + std::to_string(2 * max_period) + " points, got " +
                                           std::to_string(history.size()));
  }
  const std::size_t n = history.size();
  const std::size_t trend_window = max_period + 1;

  MstlDecomposition d;
  d.periods = periods;
  d.seasonal.assign(periods.size(), std::vector<double>(n, 0.0));
  d.profiles.assign(periods.size(), {});
  d.trend = centered_moving_average(history, trend_window);

  std::vector<double> work(n);
  for (std::size_t it = 0; it < std::max<std::size_t>(iterations, 1); ++it) {
    for (std::size_t k = 0; k < periods.size(); ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        double v = history[i] - d.trend[i];
        for (std::size_t j = 0; j < periods.size(); ++j) {
          if (j != k) v -= d.seasonal[j][i];
        }
        work[i] = v;
      }
      d.profiles[k] = seasonal_profile(work, periods[k]);
      for (std::size_t i = 0; i < n; ++i) d.seasonal[k][i] = d.profiles[k][i % periods[k]];
    }
    for (std::size_t i = 0; i < n; ++i) {
      double v = history[i];
      for (const auto& s : d.seasonal) v -= s[i];
      work[i] = v;
    }
    d.trend = centered_moving_average(work, trend_window);
  }

  d.remainder.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = history[i] - d.trend[i];
    for (const auto& s : d.seasonal) v -= s[i];
    d.remainder[i] = v;
  }
  return d;
}

std::vector<double> mstl_forecast(const MstlDecomposition& decomposition, std::size_t horizon) {
  const auto& trend = decomposition.trend;
  if (trend.empty() || decomposition.profiles.size() != decomposition.periods.size()) {
    raise(ErrorKind::kInvalidArgument, "MSTL decomposition is empty");
  }
  const std::size_t n = trend.size();
  const double drift = n > 1 ? (trend.back() - trend.front()) / static_cast<double>(n - 1) : 0.0;
  std::vector<double> out(horizon);
  for (std::size_t h = 0; h < horizon; ++h) {
    double v = trend.back() + static_cast<double>(h + 1) * drift;
    for (std::size_t k = 0; k < decomposition.periods.size(); ++k) {
      const std::size_t period = decomposition.periods[k];
      v += decomposition.profiles[k][(n + h) % period];
    }
    out[h] = v;
  }
  return out;
}

MstlForecaster::MstlForecaster(std::vector<std::size_t> periods) : periods_(std::move(periods)) {
  if (periods_.empty()) raise(ErrorKind::kInvalidArgument, "MSTL needs at least one period");
  std::sort(periods_.begin(), periods_.end());
}

std::vector<std::size_t> MstlForecaster::usable_periods(std::size_t n) const {
  std::vector<std::size_t> out;
  for (std::size_t p : periods_) {
    if (2 * p <= n) out.push_back(p);
  }
  if (out.empty()) {
    raise(ErrorKind::kHistoryTooShort, "MSTL history of " + std::to_string(n) + " points is shorter than twice " +
                                           "every configured period");
  }
  return out;
}

std::vector<double> MstlForecaster::forecast(std::span<const double> history, std::size_t horizon) const {
  return mstl_forecast(mstl_decompose(history, usable_periods(history.size())), horizon);
}

}  // namespace gapfill
