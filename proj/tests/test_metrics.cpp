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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "gapfill/metrics.hpp"
#include "test_util.hpp"

namespace gapfill {
namespace {

using testing::kind_of;

ResultCell cell(std::string meter, std::size_t start, std::string model, std::size_t run, std::vector<double> truth,
                std::vector<double> imputed) {
  return {std::move(meter), Gap(start, truth.size()), std::move(model), run, "OK", std::move(truth), std::move(imputed)};
}

ResultCell failed(std::string meter, std::size_t start, std::string model, std::size_t run) {
  return {std::move(meter), Gap(start, 2), std::move(model), run, "FAILED:AdapterTimeout", {}, {}};
}

TEST(ScoreGap, HandEvaluated) {
  const auto s = score_gap(std::vector<double>{2, 4}, std::vector<double>{3, 6});
  EXPECT_DOUBLE_EQ(s.mae, 1.5);
  EXPECT_DOUBLE_EQ(s.mse, 2.5);
  EXPECT_DOUBLE_EQ(s.rmse, std::sqrt(2.5));
  EXPECT_DOUBLE_EQ(s.mape, 0.5);
  EXPECT_DOUBLE_EQ(s.smape, 0.4);
  EXPECT_EQ(s.n_scored, 2u);
  EXPECT_EQ(s.n_skipped_mape, 0u);
  EXPECT_EQ(s.get(Metric::kRmse), s.rmse);
}

TEST(ScoreGap, Identity) {
  const std::vector<double> v{0.5, 1.0, 0.0};
  const auto s = score_gap(v, v);
  for (Metric m : kAllMetrics) EXPECT_EQ(s.get(m), 0.0) << metric_name(m);
}

TEST(ScoreGap, ZeroHandling) {
  const auto s = score_gap(std::vector<double>{0}, std::vector<double>{0});
  EXPECT_EQ(s.smape, 0.0);
  EXPECT_EQ(s.mape, 0.0);
  EXPECT_EQ(s.n_skipped_mape, 1u);
  const auto t = score_gap(std::vector<double>{0, 2}, std::vector<double>{1, 3});
  EXPECT_DOUBLE_EQ(t.mape, 0.5);
  EXPECT_EQ(t.n_skipped_mape, 1u);
  EXPECT_DOUBLE_EQ(t.smape, (2.0 + 0.4) / 2.0);
}

TEST(ScoreGap, Errors) {
  EXPECT_EQ(kind_of([] { score_gap(std::vector<double>{1}, std::vector<double>{1, 2}); }), ErrorKind::kLengthMismatch);
  EXPECT_EQ(kind_of([] { score_gap({}, {}); }), ErrorKind::kLengthMismatch);
}

TEST(MetricNames, RoundTrip) {
  for (Metric m : kAllMetrics) EXPECT_EQ(parse_metric(metric_name(m)), m);
  EXPECT_EQ(metric_name(Metric::kSmape), "SMAPE");
  EXPECT_FALSE(parse_metric("R2"));
}

class ScoreProperty : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(ScoreProperty, Invariants) {
  RandomStream rng(derive_key(GetParam(), "score"));
  const std::size_t len = 1 + rng.below(48);
  const auto truth = testing::random_values(len, GetParam() * 3, -1.0, 3.0);
  const auto imputed = testing::random_values(len, GetParam() * 3 + 1, -1.0, 3.0);
  const auto s = score_gap(truth, imputed);
  EXPECT_NEAR(s.rmse * s.rmse, s.mse, 1e-12 * std::max(1.0, s.mse));
  EXPECT_LE(s.mae, s.rmse + 1e-15);
  EXPECT_GE(s.smape, 0.0);
  EXPECT_LE(s.smape, 2.0);

  for (double c : {0.5, 4.0}) {
    std::vector<double> ct(truth), ci(imputed);
    for (auto& x : ct) x *= c;
    for (auto& x : ci) x *= c;
    const auto k = score_gap(ct, ci);
    EXPECT_EQ(k.mae, c * s.mae);
    EXPECT_EQ(k.mse, c * c * s.mse);
    EXPECT_EQ(k.rmse, c * s.rmse);
    EXPECT_EQ(k.mape, s.mape);
    EXPECT_EQ(k.smape, s.smape);
  }
  for (double c : {0.3, 7.0}) {
    std::vector<double> ct(truth), ci(imputed);
    for (auto& x : ct) x *= c;
    for (auto& x : ci) x *= c;
    const auto k = score_gap(ct, ci);
    EXPECT_NEAR(k.mae, c * s.mae, 1e-12 * c);
    EXPECT_NEAR(k.mape, s.mape, 1e-12 * std::max(1.0, s.mape));
    EXPECT_NEAR(k.smape, s.smape, 1e-12);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, ScoreProperty, ::testing::Range<std::uint64_t>(0, 50));

TEST(Aggregate, SingleCell) {
  const auto r = aggregate({cell("A", 0, "SLP", 1, {2, 4}, {3, 6})});
  ASSERT_EQ(r.models.size(), 1u);
  EXPECT_EQ(r.households, 1u);
  EXPECT_EQ(r.runs, 1u);
  EXPECT_DOUBLE_EQ((*r.models[0].mean)[0], 1.5);
  EXPECT_EQ((*r.models[0].sd)[0], 0.0);
}

TEST(Aggregate, TwoHouseholdsPopulationSd) {
  const auto r = aggregate({cell("A", 0, "M", 1, {1.0}, {1.1}), cell("B", 0, "M", 1, {1.0}, {1.3})});
  EXPECT_NEAR((*r.models[0].mean)[0], 0.2, 1e-12);
  EXPECT_NEAR((*r.models[0].sd)[0], 0.1, 1e-12);
  EXPECT_EQ(r.models[0].households, 2u);
}

TEST(Aggregate, GapsThenRunsThenHouseholds) {
  // Household A: run 1 gaps MAE {1, 3} -> 2; run 2 gap MAE {4} -> 4; A = 3.
  // Household B: one gap MAE 1 in each run; B = 1. Mean 2, SD 1.
  const std::vector<ResultCell> cells{
      cell("A", 0, "M", 1, {0}, {1}), cell("A", 10, "M", 1, {0}, {3}), cell("A", 0, "M", 2, {0}, {4}),
      cell("B", 0, "M", 1, {0}, {1}), cell("B", 0, "M", 2, {0}, {1}),
  };
  const auto r = aggregate(cells);
  EXPECT_DOUBLE_EQ((*r.models[0].mean)[0], 2.0);
  EXPECT_DOUBLE_EQ((*r.models[0].sd)[0], 1.0);
  EXPECT_EQ(r.runs, 2u);
  EXPECT_EQ(r.models[0].scored_cells, 5u);
}

TEST(Aggregate, FailuresExcludedAndFlagged) {
  const std::vector<ResultCell> cells{cell("A", 0, "Good", 1, {1}, {2}), failed("A", 10, "Good", 1),
                                      failed("A", 0, "Bad", 1), failed("B", 0, "Bad", 1)};
  const auto r = aggregate(cells);
  ASSERT_EQ(r.models.size(), 2u);
  EXPECT_EQ(r.models[0].model, "Bad");
  EXPECT_TRUE(r.models[0].all_failed());
  EXPECT_EQ(r.models[0].failures, 2u);
  EXPECT_FALSE(r.models[0].sd);
  EXPECT_EQ(r.models[1].failures, 1u);
  EXPECT_DOUBLE_EQ((*r.models[1].mean)[0], 1.0);
}

TEST(Aggregate, Empty) { EXPECT_EQ(kind_of([] { aggregate({}); }), ErrorKind::kEmptyInput); }

TEST(Aggregate, PermutationInvariant) {
  std::vector<ResultCell> cells;
  RandomStream rng(17);
  for (const char* meter : {"A", "B", "C"}) {
    for (const char* model : {"X", "Y"}) {
      for (std::size_t run = 1; run <= 3; ++run) {
        for (std::size_t g = 0; g < 4; ++g) {
          cells.push_back(cell(meter, g * 100, model, run, testing::random_values(3, rng.next()),
                               testing::random_values(3, rng.next())));
        }
      }
    }
  }
  const auto base = aggregate(cells);
  for (int k = 0; k < 5; ++k) {
    for (std::size_t i = cells.size(); i > 1; --i) std::swap(cells[i - 1], cells[rng.below(i)]);
    const auto again = aggregate(cells);
    ASSERT_EQ(again.models.size(), base.models.size());
    for (std::size_t m = 0; m < base.models.size(); ++m) {
      EXPECT_EQ(*again.models[m].mean, *base.models[m].mean);
      EXPECT_EQ(*again.models[m].sd, *base.models[m].sd);
    }
  }
}

}  // namespace
}  // namespace gapfill
