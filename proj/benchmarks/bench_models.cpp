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

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "gapfill/engine.hpp"
#include "gapfill/holt_winters.hpp"
#include "gapfill/kalman.hpp"
#include "gapfill/knn.hpp"
#include "gapfill/rng.hpp"

namespace {

std::vector<double> load_curve(std::size_t n, std::uint64_t seed) {
  gapfill::RandomStream noise(seed);
  std::vector<double> v(n);
  for (std::size_t t = 0; t < n; ++t) {
    const double x = static_cast<double>(t);
    v[t] = 0.6 + 0.3 * std::sin(2 * std::numbers::pi * x / 48) + 0.15 * std::sin(2 * std::numbers::pi * x / 336) +
           0.03 * noise.normal();
  }
  return v;
}

void BM_Interpolate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto fp = load_curve(n, 1);
  const auto bp = load_curve(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(gapfill::interpolate(fp, bp));
}
BENCHMARK(BM_Interpolate)->Arg(1)->Arg(48);

void BM_HoltWintersFit(benchmark::State& state) {
  const auto history = load_curve(336, 3);
  for (auto _ : state) benchmark::DoNotOptimize(gapfill::holt_winters_fit(history, 48));
}
BENCHMARK(BM_HoltWintersFit)->Unit(benchmark::kMillisecond);

void BM_KnnForecast(benchmark::State& state) {
  const auto history = load_curve(336, 4);
  for (auto _ : state) {
    const auto model = gapfill::knn_fit(history, 5, 48);
    benchmark::DoNotOptimize(gapfill::knn_forecast(model, history, 48));
  }
}
BENCHMARK(BM_KnnForecast)->Unit(benchmark::kMicrosecond);

void BM_KalmanLikelihood(benchmark::State& state) {
  const auto y = load_curve(720, 5);
  const std::vector<std::uint8_t> present(y.size(), 1);
  gapfill::FilterInit init;
  init.mean = gapfill::structural_initial_state(y, present, 48);
  init.burn_in = 49;
  const gapfill::StructuralKalman kf({48, {1.0, 1e-2, 1e-6, 1e-3}});
  for (auto _ : state) benchmark::DoNotOptimize(kf.likelihood(y, present, init));
}
BENCHMARK(BM_KalmanLikelihood)->Unit(benchmark::kMicrosecond);

void BM_KalmanImpute(benchmark::State& state) {
  const auto y = load_curve(720, 6);
  const gapfill::Gap gap(336, 24);
  std::vector<std::uint8_t> present(y.size(), 1);
  for (std::size_t i = gap.start(); i < gap.end(); ++i) present[i] = 0;
  const gapfill::MeterSeries s("bench", gapfill::SamplingSpec(gapfill::Timestamp{}, gapfill::kHalfHour, y.size()), y,
                               present);
  for (auto _ : state) benchmark::DoNotOptimize(gapfill::kalman_smooth_impute(s, gap));
}
BENCHMARK(BM_KalmanImpute)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
