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

#include "gapfill/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "gapfill/error.hpp"
#include "gapfill/rng.hpp"

namespace gapfill {

void SyntheticSpec::validate() const {
  if (n_meters == 0 || n_points == 0) raise(ErrorKind::kConfigError, "synthetic data needs meters and points");
  if (!(daily_amplitude >= 0.0) || !(weekly_amplitude >= 0.0) || !(noise_sd >= 0.0)) {
    raise(ErrorKind::kConfigError, "synthetic amplitudes and noise sd must be non-negative");
  }
  if (!std::isfinite(trend_slope) || !std::isfinite(base_level)) {
    raise(ErrorKind::kConfigError, "synthetic slope and base level must be finite");
  }
  if (n_meters > 9999) raise(ErrorKind::kConfigError, "at most 9999 synthetic meters");
}

std::vector<MeterSeries> synthesize(const SyntheticSpec& spec) {
  spec.validate();
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::vector<MeterSeries> out;
  out.reserve(spec.n_meters);
  for (std::size_t m = 0; m < spec.n_meters; ++m) {
    char id[16];
    std::snprintf(id, sizeof id, "SYN%04zu", m + 1);
    RandomStream noise(derive_key(spec.seed, "synthetic", id));
    std::vector<double> values(spec.n_points);
    for (std::size_t t = 0; t < spec.n_points; ++t) {
      const double x = static_cast<double>(t);
      double v = spec.base_level + spec.trend_slope * x + spec.daily_amplitude * std::sin(two_pi * x / 48.0) +
                 spec.weekly_amplitude * std::sin(two_pi * x / 336.0);
      if (spec.noise_sd > 0.0) v += spec.noise_sd * noise.normal();
      values[t] = std::max(0.0, v);
    }
    out.emplace_back(id, SamplingSpec(spec.start, kHalfHour, spec.n_points), std::move(values));
  }
  return out;
}

}  // namespace gapfill
