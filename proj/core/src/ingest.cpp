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

#include "gapfill/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "gapfill/error.hpp"
#include "gapfill/textio.hpp"

namespace gapfill {

void IngestConfig::validate() const {
  if (expected_step.count() <= 0) raise(ErrorKind::kConfigError, "expected step must be positive");
  if (id_column == time_column || id_column == value_column || time_column == value_column) {
    raise(ErrorKind::kConfigError, "id, time and value columns must be distinct");
  }
}

IngestConfig normalized_ingest_config(std::filesystem::path path) {
  IngestConfig config;
  config.path = std::move(path);
  config.id_column = "meter_id";
  config.time_column = "timestamp";
  config.value_column = "kwh";
  return config;
}

namespace {

struct Sample {
  std::int64_t slot;
  std::optional<double> value;
  std::size_t line;
};

std::size_t find_column(const std::vector<std::string>& header, const std::string& name) {
  const auto target = textio::trim(name);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (textio::trim(header[i]) == target) return i;
  }
  raise(ErrorKind::kParseError, "line 1: header has no column '" + name + "'");
}

bool is_null_token(std::string_view s) {
  if (s.empty()) return true;
  if (s.size() != 4) return false;
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  return lower == "null";
}

}  // namespace

std::vector<MeterSeries> ingest_csv(std::istream& in, const IngestConfig& config) {
  config.validate();
  using std::chrono::milliseconds;
  const auto step_ms = std::chrono::duration_cast<milliseconds>(config.expected_step).count();

  std::string line;
  if (!std::getline(in, line)) raise(ErrorKind::kParseError, "line 1: missing header row");
  const auto header = textio::split_csv_line(line);
  const std::size_t id_col = find_column(header, config.id_column);
  const std::size_t time_col = find_column(header, config.time_column);
  const std::size_t value_col = find_column(header, config.value_column);
  const std::size_t needed = std::max({id_col, time_col, value_col}) + 1;

  std::map<std::string, std::vector<Sample>> by_meter;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (textio::trim(line).empty()) continue;
    const auto fields = textio::split_csv_line(line);
    const auto where = "line " + std::to_string(line_no) + ": ";
    if (fields.size() < needed) raise(ErrorKind::kParseError, where + "expected at least " + std::to_string(needed) + " fields");

    const std::string id(textio::trim(fields[id_col]));
    if (id.empty()) raise(ErrorKind::kParseError, where + "empty meter id");
    const auto ts = textio::parse_timestamp(fields[time_col]);
    if (!ts) raise(ErrorKind::kParseError, where + "unparseable timestamp '" + fields[time_col] + "'");

    const std::int64_t t_ms = ts->time_since_epoch().count();
    const std::int64_t slot = static_cast<std::int64_t>(std::llround(static_cast<double>(t_ms) / static_cast<double>(step_ms)));
    if (std::llabs(t_ms - slot * step_ms) > config.grid_tolerance.count()) {
      raise(ErrorKind::kGridError, where + "timestamp '" + std::string(textio::trim(fields[time_col])) +
                                       "' is not on the " + std::to_string(config.expected_step.count()) + " s grid");
    }

    std::optional<double> value;
    const auto value_text = textio::trim(fields[value_col]);
    if (!is_null_token(value_text)) {
      value = textio::parse_double(value_text);
      if (!value || !std::isfinite(*value) || *value < 0.0) {
        raise(ErrorKind::kParseError, where + "invalid kWh value '" + std::string(value_text) + "'");
      }
    }
    by_meter[id].push_back(Sample{slot, value, line_no});
  }

  std::vector<MeterSeries> out;
  out.reserve(by_meter.size());
  for (auto& [id, samples] : by_meter) {
    std::sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) {
      return a.slot != b.slot ? a.slot < b.slot : a.line < b.line;
    });
    for (std::size_t i = 1; i < samples.size(); ++i) {
      if (samples[i].slot == samples[i - 1].slot) {
        raise(ErrorKind::kDuplicateError, "line " + std::to_string(samples[i].line) + ": meter '" + id +
                                              "' repeats the slot of line " + std::to_string(samples[i - 1].line));
      }
    }
    const std::int64_t first = samples.front().slot;
    const auto n = static_cast<std::size_t>(samples.back().slot - first + 1);
    std::vector<std::optional<double>> values(n);
    for (const auto& s : samples) values[static_cast<std::size_t>(s.slot - first)] = s.value;
    const Timestamp start{std::chrono::seconds{first * config.expected_step.count()}};
    out.push_back(MeterSeries::from_optional(id, SamplingSpec(start, config.expected_step, n), values));
  }
  return out;
}

std::vector<MeterSeries> ingest_csv(const IngestConfig& config) {
  std::ifstream in(config.path);
  if (!in) raise(ErrorKind::kIoError, "cannot open '" + config.path.string() + "'");
  return ingest_csv(in, config);
}

void write_series_csv(std::ostream& out, const std::vector<MeterSeries>& series) {
  out << "meter_id,timestamp,kwh\n";
  for (const auto& s : series) {
    const auto id = textio::csv_field(s.meter_id());
    for (std::size_t i = 0; i < s.size(); ++i) {
      out << id << ',' << textio::format_timestamp(s.sampling().time_of(i)) << ',';
      if (!s.is_missing(i)) out << textio::format_double(s.value(i));
      out << '\n';
    }
  }
}

void write_series_csv(const std::filesystem::path& path, const std::vector<MeterSeries>& series) {
  std::ofstream out(path);
  if (!out) raise(ErrorKind::kIoError, "cannot write '" + path.string() + "'");
  write_series_csv(out, series);
  if (!out) raise(ErrorKind::kIoError, "write failed for '" + path.string() + "'");
}

}  // namespace gapfill
