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

#include "gapfill/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "gapfill/anonymize.hpp"
#include "gapfill/engine.hpp"
#include "gapfill/error.hpp"
#include "gapfill/ingest.hpp"
#include "gapfill/report.hpp"
#include "gapfill/rng.hpp"
#include "gapfill/roster.hpp"
#include "gapfill/synthetic.hpp"
#include "gapfill/textio.hpp"

#ifndef GAPFILL_VERSION
#define GAPFILL_VERSION "0.0.0"
#endif

namespace gapfill {

std::string_view library_version() noexcept { return GAPFILL_VERSION; }

std::size_t resolve_jobs(std::size_t requested) {
  if (requested > 0) return requested;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

std::vector<std::string> sample_meters(std::vector<std::string> ids, std::size_t count, std::uint64_t seed) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (count > ids.size()) {
    raise(ErrorKind::kInvalidArgument, "cannot sample " + std::to_string(count) + " meters from " +
                                           std::to_string(ids.size()));
  }
  RandomStream stream(derive_key(seed, "sample"));
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = i + stream.below(ids.size() - i);
    std::swap(ids[i], ids[j]);
  }
  ids.resize(count);
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<MeterSeries> load_series(const RunConfig& config) {
  if (!config.data) return synthesize(config.synthetic);
  if (!std::filesystem::exists(config.data->path)) {
    raise(ErrorKind::kConfigError, "data file " + config.data->path.string() + " does not exist");
  }
  return ingest_csv(*config.data);
}

namespace {

std::vector<MeterSeries> anonymize_all(std::vector<MeterSeries> series, const AnonymizeConfig& config) {
  for (auto& s : series) s = microaggregate(s, config);
  return series;
}

std::vector<MeterSeries> select(const std::vector<MeterSeries>& series, const std::vector<std::string>& ids) {
  std::map<std::string, const MeterSeries*> by_id;
  for (const auto& s : series) by_id[s.meter_id()] = &s;
  std::vector<MeterSeries> out;
  for (const auto& id : ids) {
    const auto it = by_id.find(id);
    if (it == by_id.end()) raise(ErrorKind::kPlanMismatch, "meter " + id + " is not in the data");
    out.push_back(*it->second);
  }
  return out;
}

std::vector<std::string> ids_of(const std::vector<MeterSeries>& series) {
  std::vector<std::string> ids;
  for (const auto& s : series) ids.push_back(s.meter_id());
  return ids;
}

GapPlanParams plan_params(const RunConfig& config) {
  GapPlanParams p;
  p.seed = config.experiment.seed;
  p.gaps_per_meter = config.experiment.gaps_per_meter;
  p.max_gap_len = config.experiment.max_gap_len;
  p.context_len = config.experiment.context_len;
  return p;
}

GapPlan load_plan(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) raise(ErrorKind::kConfigError, "gap plan " + path.string() + " does not exist");
  return read_plan_csv(path);
}

}  // namespace

std::vector<MeterSeries> prepare_series(const RunConfig& config) {
  auto all = load_series(config);
  if (config.anonymize && config.anonymize_before_sampling) all = anonymize_all(std::move(all), config.anonymize_config);
  std::vector<std::string> ids;
  if (config.experiment.plan) {
    for (const auto& [id, gaps] : load_plan(*config.experiment.plan).gaps) ids.push_back(id);
  } else {
    ids = sample_meters(ids_of(all), config.experiment.meters, config.experiment.seed);
  }
  auto chosen = select(all, ids);
  if (config.anonymize && !config.anonymize_before_sampling) {
    chosen = anonymize_all(std::move(chosen), config.anonymize_config);
  }
  return chosen;
}

namespace {

struct Task {
  std::size_t entry = 0;
  /// 0 for deterministic models, which fan out to every run.
  std::size_t run = 0;
  std::string meter_id;
  Gap gap{0, 1};
};

struct TaskOutput {
  ImputationResult result;
  std::vector<DiagnosticRow> diagnostics;
};

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) raise(ErrorKind::kIoError, "cannot write " + path.string());
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

RunSummary execute_run(const RunConfig& config, std::string_view config_text, const RunOptions& options) {
  const auto log = [&options](const std::string& line) {
    if (options.log) options.log(line);
  };
  config.validate();
  const auto roster = build_roster(config);
  const auto& x = config.experiment;

  const auto out = config.output_dir;
  std::filesystem::create_directories(out);
  const auto partial = out / "PARTIAL";
  write_text(partial, "run did not complete\n");
  for (const char* stale : {"results.csv", "report.csv", "report.md", "plot_mae_sd.csv", "diagnostics.csv"}) {
    std::filesystem::remove(out / stale);
  }
  write_text(out / "config.toml", config_text);

  const auto series = prepare_series(config);
  GapPlan plan = config.experiment.plan ? load_plan(*config.experiment.plan) : generate_plan(series, plan_params(config));
  log("planned " + std::to_string(plan.total_gaps()) + " gaps on " + std::to_string(series.size()) + " meters");
  write_series_csv(out / "series.csv", series);
  write_plan_csv(out / "gaps.csv", plan);
  const MaskedDataset dataset = apply_plan(series, plan);

  // Per-run instances of stochastic adapters, keyed by (entry, run).
  std::map<std::pair<std::size_t, std::size_t>, Model> per_run;
  for (std::size_t e = 0; e < roster.size(); ++e) {
    if (!roster[e].per_run_adapter) continue;
    for (std::size_t run = 1; run <= x.runs; ++run) {
      per_run.emplace(std::make_pair(e, run), adapter_for_run(*roster[e].per_run_adapter, x.seed, run));
    }
  }

  std::vector<Task> tasks;
  for (const auto& [meter, gaps] : plan.gaps) {
    for (const auto& gap : gaps) {
      for (std::size_t e = 0; e < roster.size(); ++e) {
        if (roster[e].per_run_adapter) {
          for (std::size_t run = 1; run <= x.runs; ++run) tasks.push_back({e, run, meter, gap});
        } else {
          tasks.push_back({e, 0, meter, gap});
        }
      }
    }
  }

  std::vector<std::size_t> remaining(roster.size(), 0);
  for (const auto& t : tasks) ++remaining[t.entry];
  std::vector<std::atomic<std::size_t>> left(roster.size());
  std::vector<std::atomic<std::size_t>> failed(roster.size());
  for (std::size_t e = 0; e < roster.size(); ++e) left[e] = remaining[e];

  std::vector<TaskOutput> outputs(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& t = tasks[i];
      const Model& model = t.run == 0 ? roster[t.entry].model : per_run.at({t.entry, t.run});
      outputs[i].result = impute_gap(model, dataset, t.meter_id, t.gap, std::max<std::size_t>(t.run, 1), x.context_len);
      if (config.verbose) {
        outputs[i].diagnostics = collect_diagnostics(model, dataset.series(t.meter_id), t.gap, x.context_len);
      }
      if (!outputs[i].result.ok()) ++failed[t.entry];
      if (--left[t.entry] == 0 && options.log) {
        std::lock_guard lock(log_mutex);
        log("finished " + std::string(roster[t.entry].model.name()) + ": " + std::to_string(remaining[t.entry]) +
            " tasks, " + std::to_string(failed[t.entry].load()) + " failed");
      }
    }
  };
  const std::size_t jobs = std::min(resolve_jobs(options.jobs.value_or(x.jobs)), std::max<std::size_t>(1, tasks.size()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
  }

  std::map<std::pair<std::string, std::size_t>, const std::vector<double>*> truth;
  for (const auto& [meter, gaps] : dataset.truth) {
    for (const auto& g : gaps) truth[{meter, g.gap.start()}] = &g.truth;
  }

  std::vector<ResultCell> cells;
  std::vector<std::pair<const Task*, const TaskOutput*>> diag;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto& t = tasks[i];
    const auto& expected = *truth.at({t.meter_id, t.gap.start()});
    if (t.run != 0) {
      cells.push_back(make_cell(outputs[i].result, expected));
      diag.emplace_back(&t, &outputs[i]);
      continue;
    }
    for (std::size_t run = 1; run <= x.runs; ++run) {
      ImputationResult r = outputs[i].result;
      r.run_index = run;
      cells.push_back(make_cell(r, expected));
    }
    diag.emplace_back(&t, &outputs[i]);
  }
  const auto cell_order = [](const ResultCell& a, const ResultCell& b) {
    return std::tie(a.model, a.meter_id, a.gap, a.run) < std::tie(b.model, b.meter_id, b.gap, b.run);
  };
  std::sort(cells.begin(), cells.end(), cell_order);

  write_results_csv(out / "results.csv", cells);
  RunSummary summary;
  summary.out_dir = out;
  summary.cells = cells.size();
  for (const auto& c : cells) summary.failed_cells += c.ok() ? 0 : 1;
  summary.report = aggregate(cells);
  emit_report(out, summary.report, roster_categories(roster));

  if (config.verbose) {
    std::sort(diag.begin(), diag.end(), [&roster](const auto& a, const auto& b) {
      const std::string_view ma = roster[a.first->entry].model.name();
      const std::string_view mb = roster[b.first->entry].model.name();
      return std::tie(ma, a.first->meter_id, a.first->gap, a.first->run) <
             std::tie(mb, b.first->meter_id, b.first->gap, b.first->run);
    });
    std::ofstream d(out / "diagnostics.csv", std::ios::binary);
    d << "meter_id,gap_start,gap_len,model,run,direction,name,value\n";
    for (const auto& [t, o] : diag) {
      for (const auto& row : o->diagnostics) {
        d << textio::csv_field(t->meter_id) << ',' << t->gap.start() << ',' << t->gap.length() << ','
          << textio::csv_field(roster[t->entry].model.name()) << ',' << (t->run == 0 ? std::string("*") : std::to_string(t->run))
          << ',' << row.direction << ',' << textio::csv_field(row.name) << ',' << textio::format_double(row.value)
          << '\n';
      }
    }
    if (!d) raise(ErrorKind::kIoError, "failed writing diagnostics");
  }

  nlohmann::ordered_json manifest;
  manifest["tool"] = "gapfill";
  manifest["version"] = std::string(library_version());
  manifest["config_hash"] = "fnv1a64:" + hex64(fnv1a64(config_text));
  manifest["seed"] = x.seed;
  manifest["runs"] = x.runs;
  manifest["context_len"] = x.context_len;
  manifest["meters"] = ids_of(series);
  std::vector<std::string> models;
  for (const auto& e : roster) models.emplace_back(e.model.name());
  manifest["models"] = models;
  manifest["gaps"] = plan.total_gaps();
  manifest["cells"] = summary.cells;
  manifest["failed_cells"] = summary.failed_cells;
  manifest["config"] = std::string(config_text);
  write_text(out / "manifest.json", manifest.dump(2) + "\n");

  std::filesystem::remove(partial);
  log("wrote " + out.string());
  return summary;
}

}  // namespace gapfill
