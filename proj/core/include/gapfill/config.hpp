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


#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gapfill/adapter.hpp"
#include "gapfill/anonymize.hpp"
#include "gapfill/ingest.hpp"
#include "gapfill/synthetic.hpp"

namespace gapfill {

/// A roster entry as written in the config: a model kind plus integer
/// hyperparameters (scalars or lists).
struct ModelSpec {
  std::string kind;
  std::map<std::string, std::int64_t> ints;
  std::map<std::string, std::vector<std::int64_t>> lists;
};

struct ExperimentConfig {
  std::size_t meters = 10;
  std::size_t gaps_per_meter = 10;
  std::size_t max_gap_len = 48;
  std::size_t context_len = 336;
  std::size_t runs = 5;
  std::uint64_t seed = 0;
  /// 0 picks the available hardware parallelism.
  std::size_t jobs = 0;
  /// Use this gap plan instead of sampling meters and drawing gaps.
  std::optional<std::filesystem::path> plan;
};

struct RunConfig {
  /// Raw CSV input; synthetic data is generated when unset.
  std::optional<IngestConfig> data;
  SyntheticSpec synthetic;
  bool anonymize = false;
  AnonymizeConfig anonymize_config;
  /// Anonymize every meter before sampling (true) or only the sample.
  bool anonymize_before_sampling = true;
  ExperimentConfig experiment;
  std::vector<ModelSpec> models;
  std::vector<AdapterSpec> adapters;
  std::filesystem::path output_dir = "gapfill-out";
  bool verbose = false;

  void validate() const;
};

/// Parses TOML text. Relative data, plan and adapter paths resolve against
/// `base_dir`. Throws ConfigError.
RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

/// The default native roster, one entry per model kind.
std::vector<ModelSpec> default_models();

}  // namespace gapfill
