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

#include "gapfill/timeseries.hpp"

namespace gapfill {

struct AnonymizeConfig {
  /// Cluster size; every released value is shared by at least k readings.
  std::size_t k = 3;
};

/// Univariate fixed-size microaggregation. Present values are ranked by
/// magnitude (ties by time), cut into consecutive groups of k with the last
/// group taking the remainder (size k..2k-1), and each value is replaced by
/// its group mean at its original time position. Missing slots are kept.
MeterSeries microaggregate(const MeterSeries& series, const AnonymizeConfig& config);

}  // namespace gapfill
