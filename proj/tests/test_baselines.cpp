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

#include "gapfill/baselines.hpp"
#include "test_util.hpp"

namespace gapfill {
namespace {

using testing::kind_of;

TEST(Slp, HandComputedLine) {
  // Trailing window {1, 3, 2, 4}: slope 0.8, mean 2.5 at x = 1.5.
  const std::vector<double> h{9, 9, 1, 3, 2, 4};
  const auto f = slp_forecast(h, 3, 4);
  ASSERT_EQ(f.size(), 3u);
  EXPECT_NEAR(f[0], 2.5 + 0.8 * 2.5, 1e-12);
  EXPECT_NEAR(f[1], 2.5 + 0.8 * 3.5, 1e-12);
  EXPECT_NEAR(f[2], 2.5 + 0.8 * 4.5, 1e-12);
}

TEST(Slp, ExactOnLinearHistory) {
  std::vector<double> h(100);
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = 0.25 * static_cast<double>(i) - 3.0;
  const auto f = SlpForecaster(48).forecast(h, 20);
  for (std::size_t k = 0; k < f.size(); ++k) EXPECT_NEAR(f[k], 0.25 * static_cast<double>(100 + k) - 3.0, 1e-10);
}

TEST(Slp, Errors) {
  EXPECT_EQ(kind_of([] { slp_forecast(std::vector<double>(10, 1.0), 2, 48); }), ErrorKind::kHistoryTooShort);
  EXPECT_EQ(kind_of([] { SlpForecaster bad(1); }), ErrorKind::kInvalidArgument);
}

TEST(Slp, Diagnostics) {
  const std::vector<double> h{1, 3, 2, 4};
  const auto d = SlpForecaster(4).diagnostics(h);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_NEAR(d[1].second, 0.8, 1e-12);
}

TEST(PaddedLast, RepeatsLastValue) {
  EXPECT_EQ(padded_last_forecast(std::vector<double>{1, 2, 7.5}, 3), (std::vector<double>{7.5, 7.5, 7.5}));
  EXPECT_TRUE(padded_last_forecast(std::vector<double>{1}, 0).empty());
  EXPECT_EQ(kind_of([] { padded_last_forecast({}, 2); }), ErrorKind::kEmptyHistory);
}

TEST(LastWeek, CopiesPeriodAgo) {
  const std::vector<double> h{0, 1, 2, 3, 4, 5};
  EXPECT_EQ(last_week_forecast(h, 5, 3), (std::vector<double>{3, 4, 5, 3, 4}));
  EXPECT_EQ(kind_of([&] { last_week_forecast(h, 1, 7); }), ErrorKind::kHistoryTooShort);
  EXPECT_EQ(kind_of([&] { last_week_forecast(h, 1, 0); }), ErrorKind::kInvalidArgument);
}

TEST(LastWeek, DefaultWeek) {
  const auto h = testing::random_values(400, 3);
  const auto f = LastWeekForecaster().forecast(h, 48);
  for (std::size_t i = 0; i < 48; ++i) EXPECT_EQ(f[i], h[400 - 336 + i]);
}

TEST(LinearInterpolation, Example) {
  const auto s = testing::masked_series({1, 0, 0, 0, 5, 6}, Gap(1, 3));
  EXPECT_EQ(LinearInterpolationImputer().impute(s, Gap(1, 3)), (std::vector<double>{2, 3, 4}));
}

TEST(LinearInterpolation, MissingEndpoint) {
  const auto s = testing::masked_series({1, 0, 0, 5}, Gap(0, 2));
  EXPECT_EQ(kind_of([&] { linear_interpolation_impute(s, Gap(0, 2)); }), ErrorKind::kMissingEndpoint);
  const auto t = testing::masked_series({1, 0, 0, 5}, Gap(2, 2));
  EXPECT_EQ(kind_of([&] { linear_interpolation_impute(t, Gap(2, 2)); }), ErrorKind::kMissingEndpoint);
  const auto u = testing::masked_series({1, 0, 0, 5, 6}, Gap(1, 2));
  EXPECT_EQ(kind_of([&] { linear_interpolation_impute(u, Gap(2, 2)); }), ErrorKind::kMissingEndpoint);
}

class BaselineProperty : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(BaselineProperty, ShiftEquivariant) {
  RandomStream rng(derive_key(GetParam(), "shift"));
  const auto h = testing::random_values(400, GetParam(), 0.0, 5.0);
  const double c = 5.0 * rng.uniform01();
  std::vector<double> shifted(h);
  for (auto& x : shifted) x += c;
  const std::size_t horizon = 1 + rng.below(48);

  const auto check = [&](const std::vector<double>& a, const std::vector<double>& b) {
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(b[i], a[i] + c, 1e-12);
  };
  check(slp_forecast(h, horizon), slp_forecast(shifted, horizon));
  check(padded_last_forecast(h, horizon), padded_last_forecast(shifted, horizon));
  check(last_week_forecast(h, horizon), last_week_forecast(shifted, horizon));

  const Gap gap(100 + rng.below(200), horizon);
  check(linear_interpolation_impute(testing::masked_series(h, gap), gap),
        linear_interpolation_impute(testing::masked_series(shifted, gap), gap));
}

TEST_P(BaselineProperty, InterpolationMonotone) {
  const auto h = testing::random_values(60, GetParam());
  const Gap gap(5, 1 + GetParam() % 50);
  const auto s = testing::masked_series(h, gap);
  const auto out = linear_interpolation_impute(s, gap);
  const double left = h[gap.start() - 1];
  const double right = h[gap.end()];
  double prev = left;
  for (double v : out) {
    if (right >= left) {
      EXPECT_GE(v, prev);
      EXPECT_LE(v, right);
    } else {
      EXPECT_LE(v, prev);
      EXPECT_GE(v, right);
    }
    prev = v;
  }
}

TEST_P(BaselineProperty, Deterministic) {
  const auto h = testing::random_values(400, GetParam());
  EXPECT_EQ(slp_forecast(h, 30), slp_forecast(h, 30));
  EXPECT_EQ(last_week_forecast(h, 30), last_week_forecast(h, 30));
}

INSTANTIATE_TEST_SUITE_P(Seeds, BaselineProperty, ::testing::Range<std::uint64_t>(0, 20));

}  // namespace
}  // namespace gapfill
