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

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "gapfill/anonymize.hpp"
#include "gapfill/config.hpp"
#include "gapfill/engine.hpp"
#include "gapfill/error.hpp"
#include "gapfill/gapgen.hpp"
#include "gapfill/ingest.hpp"
#include "gapfill/metrics.hpp"
#include "gapfill/report.hpp"
#include "gapfill/roster.hpp"
#include "gapfill/runner.hpp"

namespace fs = std::filesystem;
using namespace gapfill;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::kConfigError, "cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct InputFormat {
  std::string format = "london";
  std::string id_column, time_column, value_column;

  IngestConfig make(const fs::path& path) const {
    IngestConfig c;
    if (format == "normalized") {
      c = normalized_ingest_config(path);
    } else {
      c.path = path;
    }
    if (!id_column.empty()) c.id_column = id_column;
    if (!time_column.empty()) c.time_column = time_column;
    if (!value_column.empty()) c.value_column = value_column;
    if (!fs::exists(path)) raise(ErrorKind::kConfigError, "input " + path.string() + " does not exist");
    return c;
  }
};

void add_format_options(CLI::App* cmd, InputFormat& f, const std::string& default_format) {
  f.format = default_format;
  cmd->add_option("--format", f.format, "input layout: london or normalized")
      ->check(CLI::IsMember({"london", "normalized"}))
      ->capture_default_str();
  cmd->add_option("--id-column", f.id_column, "meter id column");
  cmd->add_option("--time-column", f.time_column, "timestamp column");
  cmd->add_option("--value-column", f.value_column, "consumption column");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gapfill: smart-meter gap imputation benchmark"};
  app.set_version_flag("--version", std::string(library_version()));
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "execute a full benchmark from a config file");
  fs::path config_path;
  std::optional<fs::path> out_dir;
  std::optional<std::size_t> jobs;
  bool verbose = false;
  run->add_option("--config", config_path, "TOML run config")->required();
  run->add_option("--out", out_dir, "output directory (overrides GAPFILL_OUT_DIR and the config)");
  run->add_option("--jobs", jobs, "worker threads, 0 for all cores");
  run->add_flag("--verbose", verbose, "also write per-gap fitted parameters to diagnostics.csv");

  // ingest
  auto* ingest = app.add_subcommand("ingest", "load a half-hourly CSV and write the normalized series file");
  fs::path ingest_in, ingest_out;
  InputFormat ingest_format;
  ingest->add_option("input", ingest_in, "input CSV")->required();
  ingest->add_option("-o,--output", ingest_out, "normalized series CSV")->required();
  add_format_options(ingest, ingest_format, "london");

  // anonymize
  auto* anon = app.add_subcommand("anonymize", "microaggregate every meter of a series file");
  fs::path anon_in, anon_out;
  std::size_t anon_k = 3;
  InputFormat anon_format;
  anon->add_option("input", anon_in, "series CSV")->required();
  anon->add_option("-o,--output", anon_out, "anonymized normalized series CSV")->required();
  anon->add_option("-k", anon_k, "cluster size")->capture_default_str();
  add_format_options(anon, anon_format, "normalized");

  // gapgen
  auto* gapgen = app.add_subcommand("gapgen", "sample meters and draw a gap plan");
  fs::path gap_in, gap_out;
  GapPlanParams gap_params;
  std::optional<std::size_t> gap_meters;
  InputFormat gap_format;
  gapgen->add_option("input", gap_in, "series CSV")->required();
  gapgen->add_option("-o,--output", gap_out, "gap plan CSV")->required();
  gapgen->add_option("--seed", gap_params.seed, "master seed")->capture_default_str();
  gapgen->add_option("--gaps-per-meter", gap_params.gaps_per_meter)->capture_default_str();
  gapgen->add_option("--max-gap-len", gap_params.max_gap_len)->capture_default_str();
  gapgen->add_option("--context-len", gap_params.context_len)->capture_default_str();
  gapgen->add_option("--meters", gap_meters, "sample this many meters first (same stream as run)");
  add_format_options(gapgen, gap_format, "normalized");

  // report
  auto* report = app.add_subcommand("report", "score a results CSV and write the report tables");
  fs::path report_in, report_out = ".";
  std::optional<fs::path> report_config;
  report->add_option("input", report_in, "results.csv from a run")->required();
  report->add_option("-o,--output", report_out, "directory for report.csv, report.md, plot_mae_sd.csv")
      ->capture_default_str();
  report->add_option("--config", report_config, "run config, used to label adapter categories");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*run) {
      const std::string text = read_file(config_path);
      RunConfig config = parse_run_config(text, config_path.parent_path());
      if (const char* env = std::getenv("GAPFILL_OUT_DIR"); env && *env) config.output_dir = env;
      if (out_dir) config.output_dir = *out_dir;
      if (verbose) config.verbose = true;
      RunOptions options;
      options.jobs = jobs;
      options.log = [](std::string_view line) { std::cerr << "gapfill: " << line << '\n'; };
      const auto summary = execute_run(config, text, options);
      std::cerr << "gapfill: " << summary.cells << " cells, " << summary.failed_cells << " failed\n";
    } else if (*ingest) {
      write_series_csv(ingest_out, ingest_csv(ingest_format.make(ingest_in)));
    } else if (*anon) {
      AnonymizeConfig ac;
      ac.k = anon_k;
      auto series = ingest_csv(anon_format.make(anon_in));
      for (auto& s : series) s = microaggregate(s, ac);
      write_series_csv(anon_out, series);
    } else if (*gapgen) {
      auto series = ingest_csv(gap_format.make(gap_in));
      if (gap_meters) {
        std::vector<std::string> ids;
        for (const auto& s : series) ids.push_back(s.meter_id());
        const auto chosen = sample_meters(ids, *gap_meters, gap_params.seed);
        std::vector<MeterSeries> kept;
        for (auto& s : series) {
          if (std::binary_search(chosen.begin(), chosen.end(), s.meter_id())) kept.push_back(std::move(s));
        }
        series = std::move(kept);
      }
      write_plan_csv(gap_out, generate_plan(series, gap_params));
    } else if (*report) {
      if (!fs::exists(report_in)) raise(ErrorKind::kConfigError, "results file " + report_in.string() + " does not exist");
      CategoryResolver categories = native_category;
      if (report_config) categories = config_categories(load_run_config(*report_config));
      fs::create_directories(report_out);
      emit_report(report_out, aggregate(read_results_csv(report_in)), categories);
    }
  } catch (const Error& e) {
    std::cerr << "gapfill: " << e.what() << '\n';
    return e.kind() == ErrorKind::kConfigError ? kExitConfig : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "gapfill: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
