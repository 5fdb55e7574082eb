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

#include "gapfill/seasonal_naive.hpp"

#include <string>

#include "gapfill/error.hpp"

namespace gapfill {

std::vector<double> seasonal_naive_forecast(std::span<const double> history, std::size_t horizon,
                                            std::size_t season_length) {
  if (season_length == 0) raise(ErrorKind::kInvalidArgument, "season length must be positive");
  if (history.size() < season_length) {
    raise(ErrorKind::kHistoryTooShort, "seasonal naive needs " + std::to_string(season_length) + " points, got " +
                                           std::to_string(history.size()));
  }
  const std::size_t base = history.size() - season_length;
  std::vector<double> out(horizon);
  for (std::size_t i = 0; i < horizon; ++i) out[i] = history[base + i % season_length];
  return out;
}

SeasonalNaiveForecaster::SeasonalNaiveForecaster(std::size_t season_length) : season_length_(season_length) {
  if (season_length_ == 0) raise(ErrorKind::kInvalidArgument, "season length must be positive");
}

std::vector<double> SeasonalNaiveForecaster::forecast(std::span<const double> history, std::size_t horizon) const {
  return seasonal_naive_forecast(history, horizon, season_length_);
}

}  // namespace gapfill
