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

#include "gapfill/anonymize.hpp"

#include <algorithm>
#include <numeric>

#include "gapfill/error.hpp"

namespace gapfill {

MeterSeries microaggregate(const MeterSeries& series, const AnonymizeConfig& config) {
  if (config.k < 2) raise(ErrorKind::kInvalidArgument, "microaggregation k must be at least 2");
  std::vector<std::size_t> order;
  order.reserve(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (!series.is_missing(i)) order.push_back(i);
  }
  if (order.size() < config.k) {
    raise(ErrorKind::kTooFewValues, "series '" + series.meter_id() + "' has " + std::to_string(order.size()) +
                                        " present values, k = " + std::to_string(config.k));
  }
  const auto values = series.values();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::vector<double> out(values.begin(), values.end());
  const std::size_t groups = order.size() / config.k;
  for (std::size_t g = 0; g < groups; ++g) {
    const std::size_t begin = g * config.k;
    const std::size_t end = (g + 1 == groups) ? order.size() : begin + config.k;
    double sum = 0.0;
    for (std::size_t j = begin; j < end; ++j) sum += values[order[j]];
    const double mean = sum / static_cast<double>(end - begin);
    for (std::size_t j = begin; j < end; ++j) out[order[j]] = mean;
  }
  const auto mask = series.present_mask();
  return MeterSeries(series.meter_id(), series.sampling(), std::move(out),
                     std::vector<std::uint8_t>(mask.begin(), mask.end()));
}

}  // namespace gapfill
