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

#include <sstream>

#include "gapfill/ingest.hpp"
#include "gapfill/textio.hpp"
#include "test_util.hpp"

namespace gapfill {
namespace {

using testing::kind_of;

const char* kHeader = "LCLid,stdorToU,DateTime,KWH/hh (per half hour) \n";

std::vector<MeterSeries> ingest_text(const std::string& text, const IngestConfig& config = {}) {
  std::istringstream in(text);
  return ingest_csv(in, config);
}

TEST(Ingest, ThreeRowsOneMeter) {
  const auto out = ingest_text(std::string(kHeader) +
                               "MAC000002,Std,2012-10-12 00:00:00.0000000, 0.1\n"
                               "MAC000002,Std,2012-10-12 00:30:00.0000000, 0.25\n"
                               "MAC000002,Std,2012-10-12 01:00:00.0000000,0\n");
  ASSERT_EQ(out.size(), 1u);
  const auto& s = out[0];
  EXPECT_EQ(s.meter_id(), "MAC000002");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s.count_present(), 3u);
  EXPECT_EQ(s.value(0), 0.1);
  EXPECT_EQ(s.value(1), 0.25);
  EXPECT_EQ(s.value(2), 0.0);
  EXPECT_EQ(s.sampling().step(), kHalfHour);
  EXPECT_EQ(textio::format_timestamp(s.sampling().start()), "2012-10-12 00:00:00");
}

TEST(Ingest, OmittedRowBecomesMissing) {
  const auto out = ingest_text(std::string(kHeader) +
                               "A,Std,2012-10-12 00:00:00,1\n"
                               "A,Std,2012-10-12 01:00:00,3\n");
  ASSERT_EQ(out.size(), 1u);
  ASSERT_EQ(out[0].size(), 3u);
  EXPECT_TRUE(out[0].is_missing(1));
  EXPECT_EQ(out[0].value(2), 3.0);
}

TEST(Ingest, NullAndEmptyValuesAreMissing) {
  const auto out = ingest_text(std::string(kHeader) +
                               "A,Std,2012-10-12 00:00:00,1\n"
                               "A,Std,2012-10-12 00:30:00,Null\n"
                               "A,Std,2012-10-12 01:00:00,\n"
                               "A,Std,2012-10-12 01:30:00,2\n");
  ASSERT_EQ(out[0].size(), 4u);
  EXPECT_TRUE(out[0].is_missing(1));
  EXPECT_TRUE(out[0].is_missing(2));
}

TEST(Ingest, UnorderedRowsAndSeveralMeters) {
  const auto out = ingest_text(std::string(kHeader) +
                               "B,Std,2012-10-12 00:30:00,2\n"
                               "A,Std,2012-10-12 00:30:00,5\n"
                               "B,Std,2012-10-12 00:00:00,1\n");
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].meter_id(), "A");
  EXPECT_EQ(out[0].size(), 1u);
  EXPECT_EQ(out[1].meter_id(), "B");
  EXPECT_EQ(out[1].value(0), 1.0);
  EXPECT_EQ(out[1].value(1), 2.0);
}

TEST(Ingest, OffGridTimestamp) {
  EXPECT_EQ(kind_of([] { ingest_text(std::string(kHeader) + "A,Std,2012-10-12 00:07:00,1\n"); }),
            ErrorKind::kGridError);
}

TEST(Ingest, SubSecondJitterSnaps) {
  const auto out = ingest_text(std::string(kHeader) +
                               "A,Std,2012-10-12 00:00:00.4,1\n"
                               "A,Std,2012-10-12 00:29:59.5,2\n");
  ASSERT_EQ(out[0].size(), 2u);
  EXPECT_EQ(out[0].value(1), 2.0);
}

TEST(Ingest, DuplicateRow) {
  EXPECT_EQ(kind_of([] {
              ingest_text(std::string(kHeader) + "A,Std,2012-10-12 00:00:00,1\nA,Std,2012-10-12 00:00:00,2\n");
            }),
            ErrorKind::kDuplicateError);
}

TEST(Ingest, MalformedRowsReportLineNumbers) {
  try {
    ingest_text(std::string(kHeader) + "A,Std,2012-10-12 00:00:00,1\nA,Std,2012-10-12 00:30:00,abc\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParseError);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  EXPECT_EQ(kind_of([] { ingest_text(std::string(kHeader) + "A,Std,2012-10-12 00:00:00,-1\n"); }),
            ErrorKind::kParseError);
  EXPECT_EQ(kind_of([] { ingest_text(std::string(kHeader) + "A,Std,not a time,1\n"); }), ErrorKind::kParseError);
  EXPECT_EQ(kind_of([] { ingest_text("id,when,kwh\nA,2012-10-12 00:00:00,1\n"); }), ErrorKind::kParseError);
}

TEST(Ingest, CustomColumns) {
  IngestConfig c;
  c.id_column = "meter";
  c.time_column = "ts";
  c.value_column = "v";
  const auto out = ingest_text("ts,v,meter\n2012-10-12T00:00:00Z,1.5,X\n", c);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].value(0), 1.5);
  c.value_column = "ts";
  EXPECT_EQ(kind_of([&] { c.validate(); }), ErrorKind::kConfigError);
}

TEST(Ingest, ReEmitRoundTripsBitExactly) {
  auto values = testing::random_values(500, 9, 0.0, 3.0);
  std::vector<std::uint8_t> present(500, 1);
  present[10] = present[11] = present[499] = 0;
  const std::vector<MeterSeries> series{MeterSeries("m1", testing::half_hourly(500), values, present),
                                        testing::make_series(testing::random_values(48, 10), "m2")};
  std::stringstream buffer;
  write_series_csv(buffer, series);
  const auto back = ingest_csv(buffer, normalized_ingest_config({}));
  ASSERT_EQ(back.size(), 2u);
  ASSERT_EQ(back[0].size(), 500u);
  for (std::size_t i = 0; i < 500; ++i) {
    ASSERT_EQ(back[0].is_missing(i), series[0].is_missing(i));
    if (!series[0].is_missing(i)) ASSERT_EQ(back[0].value(i), series[0].value(i));
  }
  EXPECT_EQ(back[1], series[1]);
}

}  // namespace
}  // namespace gapfill
