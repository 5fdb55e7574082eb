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

#include "gapfill/knn.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "gapfill/error.hpp"

namespace gapfill {

KnnModel knn_fit(std::span<const double> history, std::size_t k, std::size_t window) {
  if (k == 0 || window == 0) raise(ErrorKind::kInvalidArgument, "KNN needs k >= 1 and window >= 1");
  if (history.size() < window + k) {
    raise(ErrorKind::kHistoryTooShort, "KNN needs " + std::to_string(window + k) + " points, got " +
                                           std::to_string(history.size()));
  }
  KnnModel model;
  model.k = k;
  model.window = window;
  const std::size_t rows = history.size() - window;
  model.lags.reserve(rows * window);
  model.targets.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    model.lags.insert(model.lags.end(), history.begin() + static_cast<std::ptrdiff_t>(i),
                      history.begin() + static_cast<std::ptrdiff_t>(i + window));
    model.targets.push_back(history[i + window]);
  }
  return model;
}

std::vector<double> knn_forecast(const KnnModel& model, std::span<const double> history, std::size_t horizon) {
  const std::size_t w = model.window;
  if (history.size() < w) raise(ErrorKind::kHistoryTooShort, "KNN query needs " + std::to_string(w) + " points");
  if (model.rows() < model.k) raise(ErrorKind::kHistoryTooShort, "KNN has fewer rows than k");

  std::vector<double> query(history.end() - static_cast<std::ptrdiff_t>(w), history.end());
  std::vector<std::pair<double, std::size_t>> dist(model.rows());
  std::vector<double> out(horizon);
  for (std::size_t h = 0; h < horizon; ++h) {
    for (std::size_t r = 0; r < model.rows(); ++r) {
      const double* row = model.lags.data() + r * w;
      double d = 0.0;
      for (std::size_t j = 0; j < w; ++j) {
        const double diff = row[j] - query[j];
        d += diff * diff;
      }
      dist[r] = {d, r};
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(model.k), dist.end());
    double sum = 0.0;
    for (std::size_t i = 0; i < model.k; ++i) sum += model.targets[dist[i].second];
    out[h] = sum / static_cast<double>(model.k);
    std::rotate(query.begin(), query.begin() + 1, query.end());
    query.back() = out[h];
  }
  return out;
}

KnnForecaster::KnnForecaster(std::size_t k, std::size_t window) : k_(k), window_(window) {
  if (k_ == 0 || window_ == 0) raise(ErrorKind::kInvalidArgument, "KNN needs k >= 1 and window >= 1");
}

std::vector<double> KnnForecaster::forecast(std::span<const double> history, std::size_t horizon) const {
  return knn_forecast(knn_fit(history, k_, window_), history, horizon);
}

}  // namespace gapfill
