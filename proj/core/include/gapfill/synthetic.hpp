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

#include <cstdint>
#include <vector>

#include "gapfill/timeseries.hpp"

namespace gapfill {

/// value(t) = max(0, base + slope*t + A_d*sin(2*pi*t/48) + A_w*sin(2*pi*t/336) + noise)
struct SyntheticSpec {
  std::size_t n_meters = 10;
  std::size_t n_points = 17'520;
  double daily_amplitude = 0.3;
  double weekly_amplitude = 0.15;
  double trend_slope = 0.0;
  double noise_sd = 0.03;
  double base_level = 0.6;
  std::uint64_t seed = 0;
  /// Meter ids are "SYN0001", "SYN0002", ...
  Timestamp start = std::chrono::sys_days{std::chrono::year{2013} / 1 / 1};

  void validate() const;
};

std::vector<MeterSeries> synthesize(const SyntheticSpec& spec);

}  // namespace gapfill
