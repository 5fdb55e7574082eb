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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gapfill/error.hpp"
#include "gapfill/forecaster.hpp"
#include "gapfill/gapgen.hpp"

namespace gapfill {

/// Forecast of the gap from the `context_len` points before it.
std::vector<double> forward_predict(const Forecaster& forecaster, const MeterSeries& series, const Gap& gap,
                                    std::size_t context_len = kDefaultContextLen);

/// Forecast from the time-reversed context after the gap, index-reversed so
/// element i lines up with gap position i.
std::vector<double> backward_predict(const Forecaster& forecaster, const MeterSeries& series, const Gap& gap,
                                     std::size_t context_len = kDefaultContextLen);

/// I[i] = (bp[i] * i + fp[i] * (L-1-i)) / (L-1), or the midpoint when L == 1.
std::vector<double> interpolate(std::span<const double> fp, std::span<const double> bp_reversed);

struct ImputationResult {
  std::string meter_id;
  Gap gap{0, 1};
  std::string model_name;
  std::size_t run_index = 1;
  std::vector<double> imputed;
  std::vector<double> fp;
  /// Empty for direct imputers.
  std::vector<double> bp_reversed;
  std::optional<ErrorKind> failure;
  std::string failure_message;

  bool ok() const noexcept { return !failure.has_value(); }
  /// "OK" or "FAILED:<Kind>".
  std::string status() const;
};

/// Never throws for model failures; they come back as a FAILED result.
ImputationResult impute_gap(const Model& model, const MaskedDataset& dataset, const std::string& meter_id,
                            const Gap& gap, std::size_t run_index, std::size_t context_len = kDefaultContextLen);

/// Fitted-parameter dump rows for one (model, gap).
struct DiagnosticRow {
  std::string direction;  // forward, backward or direct
  std::string name;
  double value = 0.0;
};
std::vector<DiagnosticRow> collect_diagnostics(const Model& model, const MeterSeries& series, const Gap& gap,
                                               std::size_t context_len = kDefaultContextLen);

/// One (model, meter, gap, run) cell of the results artifact.
struct ResultCell {
  std::string meter_id;
  Gap gap{0, 1};
  std::string model;
  std::size_t run = 1;
  std::string status = "OK";
  std::vector<double> truth;
  std::vector<double> imputed;

  bool ok() const noexcept { return status == "OK"; }
  bool operator==(const ResultCell&) const = default;
};

ResultCell make_cell(const ImputationResult& result, std::span<const double> truth);

/// Columns meter_id,gap_start,gap_len,model,run,status,index,truth,imputed.
/// OK cells expand to one row per gap point; FAILED cells are a single row
/// with the point columns empty.
void write_results_csv(std::ostream& out, const std::vector<ResultCell>& cells);
void write_results_csv(const std::filesystem::path& path, const std::vector<ResultCell>& cells);
std::vector<ResultCell> read_results_csv(std::istream& in);
std::vector<ResultCell> read_results_csv(const std::filesystem::path& path);

}  // namespace gapfill
