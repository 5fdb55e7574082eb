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

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gapfill/metrics.hpp"

namespace gapfill {

/// Maps a model name to its report category.
using CategoryResolver = std::function<std::string(std::string_view model)>;

/// Baseline, Statistical or ML for native models; "External" otherwise.
std::string native_category(std::string_view model);

/// Report categories in table order: the native ones first, then the rest
/// alphabetically.
int category_rank(std::string_view category);

struct ReportRow {
  std::string model;
  std::string category;
  Metric metric = Metric::kMae;
  /// Empty for a model whose cells all failed.
  std::optional<double> mean;
  std::optional<double> sd;
  std::size_t failures = 0;

  bool operator==(const ReportRow&) const = default;
};

/// One row per (model, metric), ordered by category, model, metric.
std::vector<ReportRow> build_report_rows(const AggregateReport& report, const CategoryResolver& categories);

/// Columns model,category,metric,mean,sd,failures.
void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows);
std::vector<ReportRow> read_report_csv(std::istream& in);

/// Markdown table, one row per model grouped by category. "[best]" and
/// "[worst]" mark extremes within a category, "[BEST]" and "[WORST]" across
/// all models; every tied model is marked.
void write_report_markdown(std::ostream& out, const AggregateReport& report, const std::vector<ReportRow>& rows);

/// Columns category,model,mae,mae_sd.
void write_plot_csv(std::ostream& out, const std::vector<ReportRow>& rows);

/// Writes report.csv, report.md and plot_mae_sd.csv into `dir`.
void emit_report(const std::filesystem::path& dir, const AggregateReport& report, const CategoryResolver& categories);

}  // namespace gapfill
