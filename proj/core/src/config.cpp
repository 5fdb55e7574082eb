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

#include "gapfill/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <toml.hpp>

#include "gapfill/error.hpp"

namespace gapfill {

namespace {

[[noreturn]] void config_error(const std::string& msg) { raise(ErrorKind::kConfigError, msg); }

void check_keys(const toml::table& table, const std::string& where, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : table) {
    bool known = false;
    for (auto a : allowed) known = known || key.str() == a;
    if (!known) config_error("unknown key '" + std::string(key.str()) + "' in " + where);
  }
}

const toml::table* sub_table(const toml::table& root, std::string_view name) {
  const auto* node = root.get(name);
  if (!node) return nullptr;
  const auto* t = node->as_table();
  if (!t) config_error("[" + std::string(name) + "] must be a table");
  return t;
}

std::int64_t get_int(const toml::table& t, std::string_view key, const std::string& where, std::int64_t fallback) {
  const auto* node = t.get(key);
  if (!node) return fallback;
  const auto v = node->value<std::int64_t>();
  if (!node->is_integer() || !v) config_error(where + "." + std::string(key) + " must be an integer");
  return *v;
}

std::size_t get_count(const toml::table& t, std::string_view key, const std::string& where, std::size_t fallback,
                      std::size_t minimum = 1) {
  const auto v = get_int(t, key, where, static_cast<std::int64_t>(fallback));
  if (v < static_cast<std::int64_t>(minimum)) {
    config_error(where + "." + std::string(key) + " must be at least " + std::to_string(minimum));
  }
  return static_cast<std::size_t>(v);
}

double get_real(const toml::table& t, std::string_view key, const std::string& where, double fallback) {
  const auto* node = t.get(key);
  if (!node) return fallback;
  if (!node->is_number()) config_error(where + "." + std::string(key) + " must be a number");
  return *node->value<double>();
}

bool get_bool(const toml::table& t, std::string_view key, const std::string& where, bool fallback) {
  const auto* node = t.get(key);
  if (!node) return fallback;
  if (!node->is_boolean()) config_error(where + "." + std::string(key) + " must be true or false");
  return *node->value<bool>();
}

std::optional<std::string> get_string(const toml::table& t, std::string_view key, const std::string& where) {
  const auto* node = t.get(key);
  if (!node) return std::nullopt;
  if (!node->is_string()) config_error(where + "." + std::string(key) + " must be a string");
  return *node->value<std::string>();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_relative() && !base.empty() ? base / path : path;
}

std::vector<const toml::table*> table_array(const toml::table& root, std::string_view name) {
  std::vector<const toml::table*> out;
  const auto* node = root.get(name);
  if (!node) return out;
  const auto* arr = node->as_array();
  if (!arr) config_error("[[" + std::string(name) + "]] must be an array of tables");
  for (const auto& item : *arr) {
    const auto* t = item.as_table();
    if (!t) config_error("[[" + std::string(name) + "]] entries must be tables");
    out.push_back(t);
  }
  return out;
}

ModelSpec parse_model(const toml::table& t, std::size_t index) {
  const std::string where = "models[" + std::to_string(index) + "]";
  ModelSpec spec;
  const auto kind = get_string(t, "kind", where);
  if (!kind || kind->empty()) config_error(where + " needs a 'kind'");
  spec.kind = *kind;
  for (const auto& [key, value] : t) {
    const std::string k(key.str());
    if (k == "kind") continue;
    if (value.is_integer()) {
      spec.ints[k] = *value.value<std::int64_t>();
    } else if (const auto* arr = value.as_array()) {
      std::vector<std::int64_t> items;
      for (const auto& item : *arr) {
        if (!item.is_integer()) config_error(where + "." + k + " must list integers");
        items.push_back(*item.value<std::int64_t>());
      }
      spec.lists[k] = std::move(items);
    } else {
      config_error(where + "." + k + " must be an integer or a list of integers");
    }
  }
  return spec;
}

AdapterSpec parse_adapter(const toml::table& t, std::size_t index, const std::filesystem::path& base) {
  std::string where = "adapters[" + std::to_string(index) + "]";
  check_keys(t, where, {"name", "command", "timeout_ms", "max_retries", "deterministic", "category", "env"});
  AdapterSpec spec;
  spec.name = get_string(t, "name", where).value_or("");
  if (spec.name.empty()) config_error(where + " needs a 'name'");
  where = "adapter '" + spec.name + "'";
  const auto* command = t.get("command");
  if (!command) config_error(where + " needs a 'command'");
  if (command->is_string()) {
    spec.command.push_back(*command->value<std::string>());
  } else if (const auto* arr = command->as_array()) {
    for (const auto& item : *arr) {
      if (!item.is_string()) config_error(where + ".command must list strings");
      spec.command.push_back(*item.value<std::string>());
    }
  } else {
    config_error(where + ".command must be a string or a list of strings");
  }
  if (spec.command.empty() || spec.command.front().empty()) config_error(where + ".command is empty");
  if (spec.command.front().find('/') != std::string::npos) {
    spec.command.front() = resolve(base, spec.command.front()).string();
  }
  spec.timeout = std::chrono::milliseconds(get_count(t, "timeout_ms", where, 30'000));
  spec.max_retries = get_count(t, "max_retries", where, 2, 0);
  spec.deterministic = get_bool(t, "deterministic", where, true);
  spec.category = get_string(t, "category", where).value_or("External");
  if (const auto* env = t.get("env")) {
    const auto* et = env->as_table();
    if (!et) config_error(where + ".env must be a table of strings");
    for (const auto& [key, value] : *et) {
      if (!value.is_string()) config_error(where + ".env values must be strings");
      spec.environment[std::string(key.str())] = *value.value<std::string>();
    }
  }
  return spec;
}

}  // namespace

std::vector<ModelSpec> default_models() {
  std::vector<ModelSpec> out;
  for (const char* kind : {"slp", "padded_last", "last_week", "linear_interpolation", "arima", "holt_winters",
                           "kalman", "seasonal_naive", "mstl", "knn"}) {
    out.push_back({kind, {}, {}});
  }
  return out;
}

void RunConfig::validate() const {
  if (models.empty() && adapters.empty()) config_error("the model roster is empty");
  std::set<std::string> names;
  for (const auto& a : adapters) {
    a.validate();
    if (!names.insert(a.name).second) config_error("duplicate adapter name '" + a.name + "'");
  }
  if (data) data->validate();
  if (!data) synthetic.validate();
  if (anonymize_config.k < 2) config_error("anonymize.k must be at least 2");
}

RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir) {
  toml::table root;
  try {
    root = toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "TOML syntax error at line " << e.source().begin.line << ": " << e.description();
    config_error(msg.str());
  }
  check_keys(root, "the config", {"data", "synthetic", "anonymize", "experiment", "models", "adapters", "output"});

  RunConfig cfg;
  if (const auto* d = sub_table(root, "data")) {
    check_keys(*d, "[data]", {"source", "path", "id_column", "time_column", "value_column", "format"});
    const auto source = get_string(*d, "source", "data").value_or(d->contains("path") ? "csv" : "synthetic");
    if (source == "csv") {
      const auto path = get_string(*d, "path", "data");
      if (!path || path->empty()) config_error("data.path is required when data.source = \"csv\"");
      const auto format = get_string(*d, "format", "data").value_or("london");
      IngestConfig ingest;
      if (format == "normalized") {
        ingest = normalized_ingest_config(resolve(base_dir, *path));
      } else if (format == "london") {
        ingest.path = resolve(base_dir, *path);
      } else {
        config_error("data.format must be \"london\" or \"normalized\"");
      }
      if (auto c = get_string(*d, "id_column", "data")) ingest.id_column = *c;
      if (auto c = get_string(*d, "time_column", "data")) ingest.time_column = *c;
      if (auto c = get_string(*d, "value_column", "data")) ingest.value_column = *c;
      cfg.data = std::move(ingest);
    } else if (source != "synthetic") {
      config_error("data.source must be \"csv\" or \"synthetic\"");
    }
  }

  const toml::table empty;
  const auto* e = sub_table(root, "experiment");
  if (!e) e = &empty;
  check_keys(*e, "[experiment]",
             {"meters", "gaps_per_meter", "max_gap_len", "context_len", "runs", "seed", "jobs", "plan"});
  auto& x = cfg.experiment;
  x.meters = get_count(*e, "meters", "experiment", x.meters);
  x.gaps_per_meter = get_count(*e, "gaps_per_meter", "experiment", x.gaps_per_meter);
  x.max_gap_len = get_count(*e, "max_gap_len", "experiment", x.max_gap_len);
  x.context_len = get_count(*e, "context_len", "experiment", x.context_len);
  x.runs = get_count(*e, "runs", "experiment", x.runs);
  const auto seed = get_int(*e, "seed", "experiment", 0);
  if (seed < 0) config_error("experiment.seed must be non-negative");
  x.seed = static_cast<std::uint64_t>(seed);
  x.jobs = get_count(*e, "jobs", "experiment", 0, 0);
  if (auto plan = get_string(*e, "plan", "experiment")) x.plan = resolve(base_dir, *plan);

  if (const auto* s = sub_table(root, "synthetic")) {
    check_keys(*s, "[synthetic]",
               {"meters", "points", "daily_amplitude", "weekly_amplitude", "trend_slope", "noise_sd", "base_level",
                "seed"});
    auto& y = cfg.synthetic;
    y.n_meters = get_count(*s, "meters", "synthetic", x.meters);
    y.n_points = get_count(*s, "points", "synthetic", y.n_points);
    y.daily_amplitude = get_real(*s, "daily_amplitude", "synthetic", y.daily_amplitude);
    y.weekly_amplitude = get_real(*s, "weekly_amplitude", "synthetic", y.weekly_amplitude);
    y.trend_slope = get_real(*s, "trend_slope", "synthetic", y.trend_slope);
    y.noise_sd = get_real(*s, "noise_sd", "synthetic", y.noise_sd);
    y.base_level = get_real(*s, "base_level", "synthetic", y.base_level);
    const auto sseed = get_int(*s, "seed", "synthetic", static_cast<std::int64_t>(x.seed));
    if (sseed < 0) config_error("synthetic.seed must be non-negative");
    y.seed = static_cast<std::uint64_t>(sseed);
  } else {
    cfg.synthetic.n_meters = x.meters;
    cfg.synthetic.seed = x.seed;
  }

  if (const auto* a = sub_table(root, "anonymize")) {
    check_keys(*a, "[anonymize]", {"enabled", "k", "before_sampling"});
    cfg.anonymize = get_bool(*a, "enabled", "anonymize", true);
    cfg.anonymize_config.k = get_count(*a, "k", "anonymize", 3, 2);
    cfg.anonymize_before_sampling = get_bool(*a, "before_sampling", "anonymize", true);
  }

  const auto models = table_array(root, "models");
  for (std::size_t i = 0; i < models.size(); ++i) cfg.models.push_back(parse_model(*models[i], i));
  const auto adapters = table_array(root, "adapters");
  for (std::size_t i = 0; i < adapters.size(); ++i) cfg.adapters.push_back(parse_adapter(*adapters[i], i, base_dir));
  if (!root.contains("models")) cfg.models = default_models();

  if (const auto* o = sub_table(root, "output")) {
    check_keys(*o, "[output]", {"dir", "verbose"});
    if (auto dir = get_string(*o, "dir", "output")) cfg.output_dir = *dir;
    cfg.verbose = get_bool(*o, "verbose", "output", false);
  }

  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) config_error("cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_run_config(text.str(), path.parent_path());
}

}  // namespace gapfill
