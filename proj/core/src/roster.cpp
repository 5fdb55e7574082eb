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

#include "gapfill/roster.hpp"

#include <map>
#include <set>

#include "gapfill/adapter.hpp"
#include "gapfill/arima.hpp"
#include "gapfill/baselines.hpp"
#include "gapfill/error.hpp"
#include "gapfill/holt_winters.hpp"
#include "gapfill/kalman.hpp"
#include "gapfill/knn.hpp"
#include "gapfill/mstl.hpp"
#include "gapfill/rng.hpp"
#include "gapfill/seasonal_naive.hpp"

namespace gapfill {

namespace {

class SpecReader {
 public:
  explicit SpecReader(const ModelSpec& spec) : spec_(spec) {}

  std::size_t count(const std::string& key, std::size_t fallback, std::size_t minimum = 1) {
    used_.insert(key);
    const auto it = spec_.ints.find(key);
    if (it == spec_.ints.end()) {
      if (spec_.lists.count(key)) fail(key + " must be a single integer");
      return fallback;
    }
    if (it->second < static_cast<std::int64_t>(minimum)) fail(key + " must be at least " + std::to_string(minimum));
    return static_cast<std::size_t>(it->second);
  }

  std::optional<std::size_t> optional_count(const std::string& key, std::size_t minimum = 0) {
    if (!spec_.ints.count(key) && !spec_.lists.count(key)) {
      used_.insert(key);
      return std::nullopt;
    }
    return count(key, 0, minimum);
  }

  std::vector<std::size_t> counts(const std::string& key, std::vector<std::size_t> fallback) {
    used_.insert(key);
    const auto it = spec_.lists.find(key);
    if (it == spec_.lists.end()) {
      if (spec_.ints.count(key)) fail(key + " must be a list of integers");
      return fallback;
    }
    std::vector<std::size_t> out;
    for (auto v : it->second) {
      if (v < 1) fail(key + " entries must be positive");
      out.push_back(static_cast<std::size_t>(v));
    }
    if (out.empty()) fail(key + " must not be empty");
    return out;
  }

  void finish() const {
    for (const auto& [k, v] : spec_.ints) {
      if (!used_.count(k)) fail("unknown parameter '" + k + "'");
    }
    for (const auto& [k, v] : spec_.lists) {
      if (!used_.count(k)) fail("unknown parameter '" + k + "'");
    }
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    raise(ErrorKind::kConfigError, "model '" + spec_.kind + "': " + msg);
  }

  const ModelSpec& spec_;
  std::set<std::string> used_;
};

template <typename T, typename... Args>
Model forecaster(Args&&... args) {
  return Model(std::shared_ptr<const Forecaster>(std::make_shared<const T>(std::forward<Args>(args)...)));
}

template <typename T, typename... Args>
Model imputer(Args&&... args) {
  return Model(std::shared_ptr<const DirectImputer>(std::make_shared<const T>(std::forward<Args>(args)...)));
}

}  // namespace

Model build_model(const ModelSpec& spec, std::size_t context_len) {
  SpecReader r(spec);
  const auto done = [&r](Model m) {
    r.finish();
    return m;
  };
  const auto& k = spec.kind;
  if (k == "slp") return done(forecaster<SlpForecaster>(r.count("fit_window", 48, 2)));
  if (k == "padded_last") return done(forecaster<PaddedLastForecaster>());
  if (k == "last_week") return done(forecaster<LastWeekForecaster>(r.count("period", 336)));
  if (k == "linear_interpolation") return done(imputer<LinearInterpolationImputer>());
  if (k == "seasonal_naive") return done(forecaster<SeasonalNaiveForecaster>(r.count("season_length", 48)));
  if (k == "holt_winters") return done(forecaster<HoltWintersForecaster>(r.count("season_length", 48, 2)));
  if (k == "arima") {
    const auto p = r.count("p", 3, 0);
    const auto d = r.optional_count("d");
    const auto q = r.count("q", 1, 0);
    return done(forecaster<ArimaForecaster>(p, d, q));
  }
  if (k == "kalman") return done(imputer<KalmanSmoothingImputer>(r.count("season_length", 48, 3), context_len));
  if (k == "mstl") return done(forecaster<MstlForecaster>(r.counts("periods", {48, 336})));
  if (k == "knn") {
    const auto kk = r.count("k", 5);
    const auto w = r.count("window", 48);
    return done(forecaster<KnnForecaster>(kk, w));
  }
  raise(ErrorKind::kConfigError, "unknown model kind '" + k + "'");
}

std::vector<RosterEntry> build_roster(const RunConfig& config) {
  std::vector<RosterEntry> roster;
  std::set<std::string> names;
  const auto add = [&](RosterEntry e) {
    const std::string name(e.model.name());
    if (!names.insert(name).second) raise(ErrorKind::kConfigError, "model name '" + name + "' appears twice");
    roster.push_back(std::move(e));
  };
  for (const auto& spec : config.models) {
    Model m = build_model(spec, config.experiment.context_len);
    const std::string category = native_category(m.name());
    add({std::move(m), category, std::nullopt});
  }
  for (const auto& a : config.adapters) {
    auto f = std::make_shared<const AdapterForecaster>(a);
    add({Model(std::shared_ptr<const Forecaster>(f)), a.category,
         a.deterministic ? std::nullopt : std::optional<AdapterSpec>(a)});
  }
  return roster;
}

Model adapter_for_run(const AdapterSpec& spec, std::uint64_t master_seed, std::size_t run_index) {
  AdapterSpec s = spec;
  s.environment["GAPFILL_SEED"] = std::to_string(derive_key(master_seed, "run", spec.name, run_index));
  s.environment["GAPFILL_RUN"] = std::to_string(run_index);
  return Model(std::shared_ptr<const Forecaster>(std::make_shared<const AdapterForecaster>(std::move(s))));
}

CategoryResolver roster_categories(const std::vector<RosterEntry>& roster) {
  std::map<std::string, std::string, std::less<>> table;
  for (const auto& e : roster) table[std::string(e.model.name())] = e.category;
  return [table = std::move(table)](std::string_view model) {
    const auto it = table.find(model);
    return it == table.end() ? native_category(model) : it->second;
  };
}

CategoryResolver config_categories(const RunConfig& config) {
  std::map<std::string, std::string, std::less<>> table;
  for (const auto& a : config.adapters) table[a.name] = a.category;
  return [table = std::move(table)](std::string_view model) {
    const auto it = table.find(model);
    return it == table.end() ? native_category(model) : it->second;
  };
}

}  // namespace gapfill
