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
#include <functional>
#include <vector>

namespace gapfill {

struct NelderMeadOptions {
  std::size_t max_iterations = 500;
  /// Stop when both the simplex diameter and the spread of objective values
  /// fall below this.
  double tolerance = 1e-6;
  double initial_step = 0.1;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Box-constrained Nelder-Mead; candidate points are projected onto
/// [lower, upper] before evaluation.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             std::vector<double> start, const std::vector<double>& lower,
                             const std::vector<double>& upper, const NelderMeadOptions& options = {});

}  // namespace gapfill
