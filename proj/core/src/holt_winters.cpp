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

#include "gapfill/holt_winters.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gapfill/error.hpp"

namespace gapfill {

namespace {

struct HwState {
  double level;
  double trend;
  std::vector<double> seasonal;  // by phase
};

// Level/trend line through the first two seasons; seasonal effects are the
// detrended values averaged over both seasons. Exact for noiseless
// level + trend + seasonal signals.
HwState initial_state(std::span<const double> y, std::size_t m) {
  double mean1 = 0.0;
  double mean2 = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mean1 += y[i];
    mean2 += y[m + i];
  }
  mean1 /= static_cast<double>(m);
  mean2 /= static_cast<double>(m);
  const double slope = (mean2 - mean1) / static_cast<double>(m);
  const double center = (static_cast<double>(m) - 1.0) / 2.0;
  const auto line = [&](double t) { return mean1 + slope * (t - center); };

  HwState s{line(-1.0), slope, std::vector<double>(m, 0.0)};
  for (std::size_t j = 0; j < m; ++j) {
    s.seasonal[j] = 0.5 * ((y[j] - line(static_cast<double>(j))) + (y[m + j] - line(static_cast<double>(m + j))));
  }
  double mean_s = 0.0;
  for (double v : s.seasonal) mean_s += v;
  mean_s /= static_cast<double>(m);
  for (double& v : s.seasonal) v -= mean_s;
  return s;
}

double run(std::span<const double> y, std::size_t m, double alpha, double beta, double gamma, HwState& s) {
  double sse = 0.0;
  for (std::size_t t = 0; t < y.size(); ++t) {
    const std::size_t phase = t % m;
    const double forecast = s.level + s.trend + s.seasonal[phase];
    const double err = y[t] - forecast;
    sse += err * err;
    const double prev_level = s.level;
    s.level = alpha * (y[t] - s.seasonal[phase]) + (1.0 - alpha) * (s.level + s.trend);
    s.trend = beta * (s.level - prev_level) + (1.0 - beta) * s.trend;
    s.seasonal[phase] = gamma * (y[t] - s.level) + (1.0 - gamma) * s.seasonal[phase];
  }
  return sse;
}

void check_history(std::span<const double> history, std::size_t m) {
  if (m < 2) raise(ErrorKind::kInvalidArgument, "Holt-Winters season length must be at least 2");
  if (history.size() < 2 * m) {
    raise(ErrorKind::kHistoryTooShort, "Holt-Winters needs " + std::to_string(2 * m) + " points, got " +
                                           std::to_string(history.size()));
  }
}

}  // namespace

double holt_winters_sse(std::span<const double> history, std::size_t season_length, double alpha, double beta,
                        double gamma) {
  check_history(history, season_length);
  HwState s = initial_state(history, season_length);
  return run(history, season_length, alpha, beta, gamma, s);
}

HoltWintersParams holt_winters_fit(std::span<const double> history, std::size_t season_length,
                                   const HoltWintersOptions& options) {
  check_history(history, season_length);
  const std::size_t m = season_length;
  HoltWintersParams p;
  p.season_length = m;
  p.next_phase = history.size() % m;

  const auto [lo, hi] = std::minmax_element(history.begin(), history.end());
  if (*lo == *hi) {
    p.level = *lo;
    p.seasonal.assign(m, 0.0);
    return p;
  }

  const HwState init = initial_state(history, m);
  const auto objective = [&](const std::vector<double>& x) {
    HwState s = init;
    return run(history, m, x[0], x[1], x[2], s);
  };
  const auto opt = nelder_mead(objective, options.start, {0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}, options.optimizer);

  p.alpha = opt.x[0];
  p.beta = opt.x[1];
  p.gamma = opt.x[2];
  HwState s = init;
  p.sse = run(history, m, p.alpha, p.beta, p.gamma, s);

  double mean_s = 0.0;
  for (double v : s.seasonal) mean_s += v;
  mean_s /= static_cast<double>(m);
  for (double& v : s.seasonal) v -= mean_s;
  p.level = s.level + mean_s;
  p.trend = s.trend;
  p.seasonal = std::move(s.seasonal);
  return p;
}

std::vector<double> holt_winters_forecast(const HoltWintersParams& params, std::size_t horizon) {
  if (params.season_length == 0 || params.seasonal.size() != params.season_length) {
    raise(ErrorKind::kInvalidArgument, "Holt-Winters parameters are not fitted");
  }
  std::vector<double> out(horizon);
  for (std::size_t h = 0; h < horizon; ++h) {
    out[h] = params.level + static_cast<double>(h + 1) * params.trend +
             params.seasonal[(params.next_phase + h) % params.season_length];
  }
  return out;
}

HoltWintersForecaster::HoltWintersForecaster(std::size_t season_length) : season_length_(season_length) {
  if (season_length_ < 2) raise(ErrorKind::kInvalidArgument, "Holt-Winters season length must be at least 2");
}

std::vector<double> HoltWintersForecaster::forecast(std::span<const double> history, std::size_t horizon) const {
  return holt_winters_forecast(holt_winters_fit(history, season_length_), horizon);
}

FitDiagnostics HoltWintersForecaster::diagnostics(std::span<const double> history) const {
  const auto p = holt_winters_fit(history, season_length_);
  return {{"alpha", p.alpha}, {"beta", p.beta}, {"gamma", p.gamma},
          {"level", p.level}, {"trend", p.trend}, {"sse", p.sse}};
}

}  // namespace gapfill
