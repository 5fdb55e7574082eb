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
#include <filesystem>
#include <fstream>
#include <set>

#include "gapfill/config.hpp"
#include "gapfill/roster.hpp"
#include "gapfill/runner.hpp"
#include "gapfill/synthetic.hpp"
#include "test_util.hpp"

namespace gapfill {
namespace {

using testing::kind_of;

TEST(RunConfig, Defaults) {
  const auto c = parse_run_config("");
  EXPECT_FALSE(c.data);
  EXPECT_FALSE(c.anonymize);
  EXPECT_EQ(c.experiment.runs, 5u);
  EXPECT_EQ(c.experiment.context_len, 336u);
  EXPECT_EQ(c.models.size(), default_models().size());
  EXPECT_EQ(default_models().size(), 10u);
  EXPECT_EQ(c.output_dir, "gapfill-out");
}

TEST(RunConfig, FullExample) {
  const auto c = parse_run_config(R"(
[data]
source = "csv"
path = "raw/london.csv"
value_column = "kwh"

[anonymize]
k = 4

[experiment]
meters = 3
runs = 2
seed = 99
plan = "plan.csv"

[[models]]
kind = "mstl"
periods = [24, 168]

[[adapters]]
name = "XGB"
command = "./bin/xgb"
timeout_ms = 1500
deterministic = false
category = "ML"
env = { THREADS = "1" }

[output]
dir = "out"
verbose = true
)",
                                  "/cfg");
  ASSERT_TRUE(c.data);
  EXPECT_EQ(c.data->path, "/cfg/raw/london.csv");
  EXPECT_EQ(c.data->value_column, "kwh");
  EXPECT_TRUE(c.anonymize);
  EXPECT_EQ(c.anonymize_config.k, 4u);
  EXPECT_EQ(c.experiment.seed, 99u);
  EXPECT_EQ(c.experiment.plan, std::filesystem::path("/cfg/plan.csv"));
  ASSERT_EQ(c.models.size(), 1u);
  EXPECT_EQ(c.models[0].lists.at("periods"), (std::vector<std::int64_t>{24, 168}));
  ASSERT_EQ(c.adapters.size(), 1u);
  EXPECT_EQ(c.adapters[0].command, (std::vector<std::string>{"/cfg/./bin/xgb"}));
  EXPECT_EQ(c.adapters[0].timeout.count(), 1500);
  EXPECT_FALSE(c.adapters[0].deterministic);
  EXPECT_EQ(c.adapters[0].category, "ML");
  EXPECT_EQ(c.adapters[0].environment.at("THREADS"), "1");
  EXPECT_TRUE(c.verbose);
}

TEST(RunConfig, SyntheticSeedFollowsExperiment) {
  const auto c = parse_run_config("[experiment]\nseed = 12\n[synthetic]\nmeters = 4\n");
  EXPECT_EQ(c.synthetic.seed, 12u);
  EXPECT_EQ(c.synthetic.n_meters, 4u);
}

TEST(RunConfig, EmptyModelListMeansAdaptersOnly) {
  const auto c = parse_run_config("models = []\n[[adapters]]\nname = \"E\"\ncommand = [\"/bin/cat\"]\n");
  EXPECT_TRUE(c.models.empty());
  EXPECT_EQ(c.adapters.size(), 1u);
}

TEST(RunConfig, Errors) {
  for (const char* text : {
           "[experiment]\nmeterz = 3\n",
           "[experiment]\nruns = 0\n",
           "[experiment]\nruns = -1\n",
           "[data]\nsource = \"csv\"\n",
           "[data]\nsource = \"ftp\"\n",
           "[[models]]\nkind = \"prophet\"\n",
           "[[models]]\nkind = \"knn\"\nneighbours = 3\n",
           "[[adapters]]\nname = \"x\"\n",
           "[experiment\n",
           "[bogus]\n",
           "[[models]]\nkind = \"slp\"\n[[models]]\nkind = \"slp\"\n",
       }) {
    EXPECT_EQ(kind_of([&] { build_roster(parse_run_config(text)); }), ErrorKind::kConfigError) << text;
  }
}

TEST(RunConfig, LoadMissingFile) {
  EXPECT_EQ(kind_of([] { load_run_config("/nonexistent/run.toml"); }), ErrorKind::kConfigError);
}

TEST(RunConfig, ExampleConfigLoads) {
  const auto c = load_run_config(std::filesystem::path(GAPFILL_SOURCE_DIR) / "configs/example.toml");
  EXPECT_TRUE(c.anonymize);
  EXPECT_EQ(build_roster(c).size(), 10u);
}

TEST(Roster, NamesAndCategories) {
  const auto roster = build_roster(parse_run_config(""));
  std::set<std::string> names;
  for (const auto& e : roster) names.insert(std::string(e.model.name()));
  EXPECT_EQ(names, (std::set<std::string>{"SLP", "Padded Last", "Last Week", "Linear Interpolation", "ARIMA",
                                          "Holt Winters", "Kalman Smoothing", "Seasonal Naive", "MSTL", "KNN"}));
  const auto cats = roster_categories(roster);
  EXPECT_EQ(cats("KNN"), "ML");
  EXPECT_EQ(cats("ARIMA"), "Statistical");
  EXPECT_EQ(cats("Last Week"), "Baseline");
}

TEST(Roster, AdapterEntries) {
  const auto c = parse_run_config(
      "models = []\n[[adapters]]\nname = \"Det\"\ncommand = [\"/bin/cat\"]\n"
      "[[adapters]]\nname = \"Sto\"\ncommand = [\"/bin/cat\"]\ndeterministic = false\ncategory = \"ML\"\n");
  const auto roster = build_roster(c);
  ASSERT_EQ(roster.size(), 2u);
  EXPECT_FALSE(roster[0].per_run_adapter);
  EXPECT_EQ(roster[0].category, "External");
  EXPECT_TRUE(roster[1].per_run_adapter);
  EXPECT_EQ(config_categories(c)("Sto"), "ML");
}

TEST(Roster, BadValues) {
  ModelSpec slp{"slp", {{"fit_window", 1}}, {}};
  EXPECT_THROW(build_model(slp), Error);
  ModelSpec kalman{"kalman", {{"season_length", 2}}, {}};
  EXPECT_THROW(build_model(kalman), Error);
  ModelSpec arima{"arima", {{"p", 2}, {"d", 1}, {"q", 0}}, {}};
  EXPECT_EQ(build_model(arima).name(), "ARIMA");
}

TEST(SampleMeters, SeededAndSorted) {
  std::vector<std::string> ids;
  for (int i = 0; i < 50; ++i) ids.push_back("MAC" + std::to_string(1000 + i));
  const auto a = sample_meters(ids, 10, 5);
  EXPECT_EQ(a.size(), 10u);
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
  EXPECT_EQ(std::set<std::string>(a.begin(), a.end()).size(), 10u);
  std::vector<std::string> shuffled(ids.rbegin(), ids.rend());
  EXPECT_EQ(sample_meters(shuffled, 10, 5), a);
  EXPECT_NE(sample_meters(ids, 10, 6), a);
  EXPECT_EQ(sample_meters(ids, 50, 1), ids);
  EXPECT_EQ(kind_of([&] { sample_meters(ids, 51, 1); }), ErrorKind::kInvalidArgument);
}

TEST(Synthetic, ShapeAndDeterminism) {
  SyntheticSpec s;
  s.n_meters = 3;
  s.n_points = 1000;
  s.seed = 4;
  const auto a = synthesize(s);
  ASSERT_EQ(a.size(), 3u);
  EXPECT_EQ(a[0].meter_id(), "SYN0001");
  EXPECT_EQ(a[0].size(), 1000u);
  for (double v : a[0].values()) EXPECT_GE(v, 0.0);
  EXPECT_EQ(synthesize(s), a);
  s.n_meters = 0;
  EXPECT_EQ(kind_of([&] { s.validate(); }), ErrorKind::kConfigError);
}

TEST(ExecuteRun, SmallEndToEnd) {
  const auto dir = std::filesystem::temp_directory_path() / "gapfill_config_run";
  std::filesystem::remove_all(dir);
  const std::string text =
      "[synthetic]\nmeters = 3\npoints = 2000\n"
      "[experiment]\nmeters = 2\ngaps_per_meter = 2\nruns = 2\nseed = 3\njobs = 2\n"
      "[[models]]\nkind = \"padded_last\"\n[[models]]\nkind = \"linear_interpolation\"\n"
      "[output]\ndir = \"" + dir.string() + "\"\nverbose = true\n";
  const auto summary = execute_run(parse_run_config(text), text);
  EXPECT_EQ(summary.cells, 2u * 2u * 2u * 2u);
  EXPECT_EQ(summary.failed_cells, 0u);
  EXPECT_EQ(summary.report.households, 2u);
  for (const char* f : {"config.toml", "series.csv", "gaps.csv", "results.csv", "report.csv", "report.md",
                        "plot_mae_sd.csv", "manifest.json", "diagnostics.csv"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  }
  EXPECT_FALSE(std::filesystem::exists(dir / "PARTIAL"));
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace gapfill
