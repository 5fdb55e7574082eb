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

#include "gapfill/report.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <tuple>

#include "gapfill/error.hpp"
#include "gapfill/textio.hpp"

namespace gapfill {

std::string native_category(std::string_view model) {
  static const std::map<std::string_view, std::string_view> table{
      {"SLP", "Baseline"},
      {"Padded Last", "Baseline"},
      {"Last Week", "Baseline"},
      {"Linear Interpolation", "Baseline"},
      {"ARIMA", "Statistical"},
      {"Holt Winters", "Statistical"},
      {"Kalman Smoothing", "Statistical"},
      {"Seasonal Naive", "Statistical"},
      {"MSTL", "Statistical"},
      {"KNN", "ML"},
  };
  const auto it = table.find(model);
  return std::string(it == table.end() ? std::string_view("External") : it->second);
}

int category_rank(std::string_view category) {
  if (category == "Baseline") return 0;
  if (category == "Statistical") return 1;
  if (category == "ML") return 2;
  return 3;
}

namespace {

bool row_order(const ReportRow& a, const ReportRow& b) {
  return std::make_tuple(category_rank(a.category), a.category, a.model, static_cast<int>(a.metric)) <
         std::make_tuple(category_rank(b.category), b.category, b.model, static_cast<int>(b.metric));
}

std::string optional_number(const std::optional<double>& v) { return v ? textio::format_double(*v) : std::string(); }

}  // namespace

std::vector<ReportRow> build_report_rows(const AggregateReport& report, const CategoryResolver& categories) {
  std::vector<ReportRow> rows;
  for (const auto& m : report.models) {
    const std::string category = categories ? categories(m.model) : native_category(m.model);
    for (std::size_t k = 0; k < kAllMetrics.size(); ++k) {
      ReportRow row;
      row.model = m.model;
      row.category = category;
      row.metric = kAllMetrics[k];
      if (m.mean) row.mean = (*m.mean)[k];
      if (m.sd) row.sd = (*m.sd)[k];
      row.failures = m.failures;
      rows.push_back(std::move(row));
    }
  }
  std::stable_sort(rows.begin(), rows.end(), row_order);
  return rows;
}

namespace {
constexpr std::string_view kReportHeader = "model,category,metric,mean,sd,failures";
}

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
  out << kReportHeader << '\n';
  for (const auto& r : rows) {
    out << textio::csv_field(r.model) << ',' << textio::csv_field(r.category) << ',' << metric_name(r.metric) << ','
        << optional_number(r.mean) << ',' << optional_number(r.sd) << ',' << r.failures << '\n';
  }
  if (!out) raise(ErrorKind::kIoError, "failed writing report");
}

std::vector<ReportRow> read_report_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || textio::trim(line) != kReportHeader) {
    raise(ErrorKind::kParseError, "report file must start with '" + std::string(kReportHeader) + "'");
  }
  std::vector<ReportRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (textio::trim(line).empty()) continue;
    const auto f = textio::split_csv_line(line);
    const auto where = "report line " + std::to_string(line_no);
    if (f.size() != 6) raise(ErrorKind::kParseError, where + ": expected 6 fields");
    ReportRow r;
    r.model = f[0];
    r.category = f[1];
    const auto metric = parse_metric(f[2]);
    if (!metric) raise(ErrorKind::kParseError, where + ": unknown metric '" + f[2] + "'");
    r.metric = *metric;
    if (!f[3].empty()) {
      r.mean = textio::parse_double(f[3]);
      if (!r.mean) raise(ErrorKind::kParseError, where + ": bad mean");
    }
    if (!f[4].empty()) {
      r.sd = textio::parse_double(f[4]);
      if (!r.sd) raise(ErrorKind::kParseError, where + ": bad sd");
    }
    const auto failures = textio::parse_u64(f[5]);
    if (!failures) raise(ErrorKind::kParseError, where + ": bad failure count");
    r.failures = static_cast<std::size_t>(*failures);
    rows.push_back(std::move(r));
  }
  return rows;
}

namespace {

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

struct Extremes {
  double best = 0.0;
  double worst = 0.0;
  std::size_t count = 0;
};

void note(Extremes& e, double v) {
  if (e.count == 0) {
    e.best = e.worst = v;
  } else {
    e.best = std::min(e.best, v);
    e.worst = std::max(e.worst, v);
  }
  ++e.count;
}

}  // namespace

void write_report_markdown(std::ostream& out, const AggregateReport& report, const std::vector<ReportRow>& rows) {
  std::map<std::pair<std::string, Metric>, Extremes> by_category;
  std::map<Metric, Extremes> overall;
  for (const auto& r : rows) {
    if (!r.mean) continue;
    note(by_category[{r.category, r.metric}], *r.mean);
    note(overall[r.metric], *r.mean);
  }

  out << "# Imputation benchmark\n\n";
  out << "Per-gap errors are averaged within each household and run, then over runs, then across households. "
      << "Cells show mean (population SD) over " << report.households << " households and " << report.runs
      << (report.runs == 1 ? " run" : " runs") << ". Lower is better for every metric.\n\n";
  out << "Markers: [best]/[worst] within a category, [BEST]/[WORST] across all models.\n\n";
  out << "| Category | Model |";
  for (Metric m : kAllMetrics) out << ' ' << metric_name(m) << " |";
  out << " Failed |\n|---|---|";
  for (std::size_t k = 0; k < kAllMetrics.size(); ++k) out << "---|";
  out << "---|\n";

  std::map<std::pair<std::string, Metric>, std::vector<std::string>> ties;
  std::string last_category;
  for (std::size_t i = 0; i < rows.size();) {
    const auto& first = rows[i];
    out << "| " << (first.category == last_category ? std::string() : first.category) << " | " << first.model << " |";
    last_category = first.category;
    std::size_t failures = first.failures;
    for (; i < rows.size() && rows[i].model == first.model && rows[i].category == first.category; ++i) {
      const auto& r = rows[i];
      if (!r.mean) {
        out << " all failed |";
        continue;
      }
      std::string cell = short_number(*r.mean) + " (" + short_number(r.sd.value_or(0.0)) + ")";
      const auto& cat = by_category[{r.category, r.metric}];
      const auto& all = overall[r.metric];
      if (all.count > 1 && *r.mean == all.best) {
        cell += " [BEST]";
        ties[{"all models", r.metric}].push_back(r.model);
      } else if (all.count > 1 && *r.mean == all.worst) {
        cell += " [WORST]";
      }
      if (cat.count > 1 && *r.mean == cat.best) {
        cell += " [best]";
        ties[{r.category, r.metric}].push_back(r.model);
      } else if (cat.count > 1 && *r.mean == cat.worst) {
        cell += " [worst]";
      }
      out << ' ' << cell << " |";
    }
    out << ' ' << failures << " |\n";
  }

  bool header = false;
  for (const auto& [key, models] : ties) {
    if (models.size() < 2) continue;
    if (!header) {
      out << "\nTies:\n\n";
      header = true;
    }
    out << "- " << metric_name(key.second) << " best in " << key.first << " is shared by ";
    for (std::size_t k = 0; k < models.size(); ++k) out << (k ? ", " : "") << models[k];
    out << ".\n";
  }
  if (!out) raise(ErrorKind::kIoError, "failed writing markdown report");
}

void write_plot_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
  out << "category,model,mae,mae_sd\n";
  for (const auto& r : rows) {
    if (r.metric != Metric::kMae || !r.mean) continue;
    out << textio::csv_field(r.category) << ',' << textio::csv_field(r.model) << ','
        << textio::format_double(*r.mean) << ',' << optional_number(r.sd) << '\n';
  }
  if (!out) raise(ErrorKind::kIoError, "failed writing plot data");
}

void emit_report(const std::filesystem::path& dir, const AggregateReport& report, const CategoryResolver& categories) {
  const auto rows = build_report_rows(report, categories);
  const auto open = [&dir](const char* name) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) raise(ErrorKind::kIoError, "cannot open " + (dir / name).string());
    return out;
  };
  {
    auto out = open("report.csv");
    write_report_csv(out, rows);
  }
  {
    auto out = open("report.md");
    write_report_markdown(out, report, rows);
  }
  {
    auto out = open("plot_mae_sd.csv");
    write_plot_csv(out, rows);
  }
}

}  // namespace gapfill
