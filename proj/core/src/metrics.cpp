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

#include "gapfill/metrics.hpp"

#include <cmath>
#include <map>
#include <set>

#include "gapfill/error.hpp"

namespace gapfill {

std::string_view metric_name(Metric m) {
  switch (m) {
    case Metric::kMae: return "MAE";
    case Metric::kMape: return "MAPE";
    case Metric::kMse: return "MSE";
    case Metric::kRmse: return "RMSE";
    case Metric::kSmape: return "SMAPE";
  }
  return "?";
}

std::optional<Metric> parse_metric(std::string_view name) {
  for (Metric m : kAllMetrics) {
    if (metric_name(m) == name) return m;
  }
  return std::nullopt;
}

double MetricSet::get(Metric m) const {
  switch (m) {
    case Metric::kMae: return mae;
    case Metric::kMape: return mape;
    case Metric::kMse: return mse;
    case Metric::kRmse: return rmse;
    case Metric::kSmape: return smape;
  }
  return 0.0;
}

MetricSet score_gap(std::span<const double> truth, std::span<const double> imputed) {
  if (truth.size() != imputed.size()) raise(ErrorKind::kLengthMismatch, "truth and imputed lengths differ");
  if (truth.empty()) raise(ErrorKind::kLengthMismatch, "nothing to score");
  MetricSet s;
  double abs_sum = 0.0, sq_sum = 0.0, ape_sum = 0.0, sape_sum = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double a = truth[i];
    const double f = imputed[i];
    if (!std::isfinite(a) || !std::isfinite(f)) raise(ErrorKind::kNonFiniteInput, "scored values must be finite");
    const double e = std::abs(f - a);
    abs_sum += e;
    sq_sum += e * e;
    if (std::abs(a) < kMapeZeroThreshold) {
      ++s.n_skipped_mape;
    } else {
      ape_sum += e / std::abs(a);
    }
    const double denom = std::abs(a) + std::abs(f);
    if (denom > 0.0) sape_sum += 2.0 * e / denom;
  }
  const double n = static_cast<double>(truth.size());
  s.n_scored = truth.size();
  s.mae = abs_sum / n;
  s.mse = sq_sum / n;
  s.rmse = std::sqrt(s.mse);
  const std::size_t mape_n = truth.size() - s.n_skipped_mape;
  s.mape = mape_n > 0 ? ape_sum / static_cast<double>(mape_n) : 0.0;
  s.smape = sape_sum / n;
  return s;
}

namespace {

struct Accumulator {
  std::array<double, 5> sum{};
  std::size_t count = 0;

  void add(const std::array<double, 5>& v) {
    for (std::size_t k = 0; k < 5; ++k) sum[k] += v[k];
    ++count;
  }
  std::array<double, 5> mean() const {
    std::array<double, 5> out{};
    for (std::size_t k = 0; k < 5; ++k) out[k] = sum[k] / static_cast<double>(count);
    return out;
  }
};

std::array<double, 5> as_array(const MetricSet& s) { return {s.mae, s.mape, s.mse, s.rmse, s.smape}; }

// Order-independent gap keys so the fold does not depend on input order.
using GapKey = std::pair<std::size_t, std::size_t>;

}  // namespace

AggregateReport aggregate(const std::vector<ResultCell>& cells) {
  if (cells.empty()) raise(ErrorKind::kEmptyInput, "no results to aggregate");

  // model -> meter -> run -> gap -> metrics
  std::map<std::string, std::map<std::string, std::map<std::size_t, std::map<GapKey, std::array<double, 5>>>>> tree;
  std::map<std::string, std::size_t> failures;
  std::set<std::string> meters;
  std::set<std::size_t> runs;
  for (const auto& c : cells) {
    meters.insert(c.meter_id);
    runs.insert(c.run);
    auto& per_run = tree[c.model];
    if (!c.ok()) {
      ++failures[c.model];
      continue;
    }
    per_run[c.meter_id][c.run][{c.gap.start(), c.gap.length()}] = as_array(score_gap(c.truth, c.imputed));
  }

  AggregateReport report;
  report.households = meters.size();
  report.runs = runs.size();
  for (const auto& [model, by_meter] : tree) {
    ModelAggregate agg;
    agg.model = model;
    agg.failures = failures[model];
    std::set<std::size_t> model_runs;
    std::vector<std::array<double, 5>> household_values;
    for (const auto& [meter, by_run] : by_meter) {
      Accumulator over_runs;
      for (const auto& [run, by_gap] : by_run) {
        if (by_gap.empty()) continue;
        model_runs.insert(run);
        Accumulator over_gaps;
        for (const auto& [gap, values] : by_gap) over_gaps.add(values);
        agg.scored_cells += over_gaps.count;
        over_runs.add(over_gaps.mean());
      }
      if (over_runs.count > 0) household_values.push_back(over_runs.mean());
    }
    agg.households = household_values.size();
    agg.runs = model_runs.size();
    if (!household_values.empty()) {
      Accumulator across;
      for (const auto& v : household_values) across.add(v);
      const auto mean = across.mean();
      std::array<double, 5> sd{};
      for (std::size_t k = 0; k < 5; ++k) {
        double ss = 0.0;
        for (const auto& v : household_values) ss += (v[k] - mean[k]) * (v[k] - mean[k]);
        sd[k] = std::sqrt(ss / static_cast<double>(household_values.size()));
      }
      agg.mean = mean;
      agg.sd = sd;
    }
    report.models.push_back(std::move(agg));
  }
  return report;
}

}  // namespace gapfill
