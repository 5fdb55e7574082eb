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

/// output[i] = history[n - m + (i mod m)].
std::vector<double> seasonal_naive_forecast(std::span<const double> history, std::size_t horizon,
                                            std::size_t season_length = 48);

class SeasonalNaiveForecaster final : public Forecaster {
 public:
  explicit SeasonalNaiveForecaster(std::size_t season_length = 48);
  std::string_view name() const override { return "Seasonal Naive"; }
  std::vector<double> forecast(std::span<const double> history, std::size_t horizon) const override;

 private:
  std::size_t season_length_;
};

}  // namespace gapfill
