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

#include "gapfill/engine.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "gapfill/textio.hpp"

namespace gapfill {

namespace {

void check_forecast(const Forecaster& forecaster, const std::vector<double>& values, std::size_t horizon) {
  if (values.size() != horizon) {
    raise(ErrorKind::kLengthMismatch, std::string(forecaster.name()) + " returned " + std::to_string(values.size()) +
                                          " values for horizon " + std::to_string(horizon));
  }
  for (double v : values) {
    if (!std::isfinite(v)) raise(ErrorKind::kNonFiniteInput, std::string(forecaster.name()) + " returned a non-finite value");
  }
}

}  // namespace

std::vector<double> forward_predict(const Forecaster& forecaster, const MeterSeries& series, const Gap& gap,
                                    std::size_t context_len) {
  const Window left = extract_left_context(series, gap, context_len);
  auto fp = forecaster.forecast(left.values(), gap.length());
  check_forecast(forecaster, fp, gap.length());
  return fp;
}

std::vector<double> backward_predict(const Forecaster& forecaster, const MeterSeries& series, const Gap& gap,
                                     std::size_t context_len) {
  const Window right = reverse(extract_right_context(series, gap, context_len));
  auto b = forecaster.forecast(right.values(), gap.length());
  check_forecast(forecaster, b, gap.length());
  std::reverse(b.begin(), b.end());
  return b;
}

std::vector<double> interpolate(std::span<const double> fp, std::span<const double> bp_reversed) {
  if (fp.size() != bp_reversed.size()) {
    raise(ErrorKind::kLengthMismatch, "forward and backward predictions differ in length");
  }
  if (fp.empty()) raise(ErrorKind::kLengthMismatch, "predictions must not be empty");
  for (std::size_t i = 0; i < fp.size(); ++i) {
    if (!std::isfinite(fp[i]) || !std::isfinite(bp_reversed[i])) {
      raise(ErrorKind::kNonFiniteInput, "predictions must be finite");
    }
  }
  const std::size_t n = fp.size();
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = (fp[0] + bp_reversed[0]) / 2.0;
    return out;
  }
  const double denom = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double wb = static_cast<double>(i);
    const double wf = static_cast<double>(n - 1 - i);
    const double v = (bp_reversed[i] * wb + fp[i] * wf) / denom;
    out[i] = std::clamp(v, std::min(fp[i], bp_reversed[i]), std::max(fp[i], bp_reversed[i]));
  }
  // Rounding in the weighted sum can move the endpoints by an ulp.
  out.front() = fp.front();
  out.back() = bp_reversed.back();
  return out;
}

std::string ImputationResult::status() const {
  return failure ? "FAILED:" + std::string(to_string(*failure)) : std::string("OK");
}

ImputationResult impute_gap(const Model& model, const MaskedDataset& dataset, const std::string& meter_id,
                            const Gap& gap, std::size_t run_index, std::size_t context_len) {
  ImputationResult result;
  result.meter_id = meter_id;
  result.gap = gap;
  result.model_name = std::string(model.name());
  result.run_index = run_index;
  try {
    const MeterSeries& series = dataset.series(meter_id);
    if (const auto* f = model.forecaster()) {
      result.fp = forward_predict(*f, series, gap, context_len);
      result.bp_reversed = backward_predict(*f, series, gap, context_len);
      result.imputed = interpolate(result.fp, result.bp_reversed);
    } else {
      auto values = model.direct_imputer()->impute(series, gap);
      if (values.size() != gap.length()) {
        raise(ErrorKind::kLengthMismatch, result.model_name + " filled " + std::to_string(values.size()) +
                                              " of " + std::to_string(gap.length()) + " points");
      }
      for (double v : values) {
        if (!std::isfinite(v)) raise(ErrorKind::kNonFiniteInput, result.model_name + " produced a non-finite value");
      }
      result.fp = values;
      result.imputed = std::move(values);
    }
  } catch (const Error& e) {
    result.failure = e.kind();
    result.failure_message = e.what();
  } catch (const std::exception& e) {
    result.failure = ErrorKind::kNumericalFailure;
    result.failure_message = e.what();
  }
  if (!result.ok()) {
    result.imputed.clear();
    result.fp.clear();
    result.bp_reversed.clear();
  }
  return result;
}

std::vector<DiagnosticRow> collect_diagnostics(const Model& model, const MeterSeries& series, const Gap& gap,
                                               std::size_t context_len) {
  std::vector<DiagnosticRow> rows;
  const auto add = [&rows](const char* direction, const FitDiagnostics& d) {
    for (const auto& [name, value] : d) rows.push_back({direction, name, value});
  };
  try {
    if (const auto* f = model.forecaster()) {
      add("forward", f->diagnostics(extract_left_context(series, gap, context_len).values()));
      add("backward", f->diagnostics(reverse(extract_right_context(series, gap, context_len)).values()));
    } else {
      add("direct", model.direct_imputer()->diagnostics(series, gap));
    }
  } catch (const std::exception&) {
    // Failed fits have nothing to report; the results artifact has the reason.
  }
  return rows;
}

ResultCell make_cell(const ImputationResult& result, std::span<const double> truth) {
  ResultCell cell;
  cell.meter_id = result.meter_id;
  cell.gap = result.gap;
  cell.model = result.model_name;
  cell.run = result.run_index;
  cell.status = result.status();
  if (result.ok()) {
    if (truth.size() != result.imputed.size()) raise(ErrorKind::kLengthMismatch, "truth and imputed lengths differ");
    cell.truth.assign(truth.begin(), truth.end());
    cell.imputed = result.imputed;
  }
  return cell;
}

namespace {
constexpr std::string_view kResultsHeader = "meter_id,gap_start,gap_len,model,run,status,index,truth,imputed";
}

void write_results_csv(std::ostream& out, const std::vector<ResultCell>& cells) {
  out << kResultsHeader << '\n';
  for (const auto& c : cells) {
    const std::string prefix = textio::csv_field(c.meter_id) + ',' + std::to_string(c.gap.start()) + ',' +
                               std::to_string(c.gap.length()) + ',' + textio::csv_field(c.model) + ',' +
                               std::to_string(c.run) + ',' + textio::csv_field(c.status) + ',';
    if (!c.ok()) {
      out << prefix << ",,\n";
      continue;
    }
    for (std::size_t i = 0; i < c.imputed.size(); ++i) {
      out << prefix << i << ',' << textio::format_double(c.truth[i]) << ',' << textio::format_double(c.imputed[i])
          << '\n';
    }
  }
  if (!out) raise(ErrorKind::kIoError, "failed writing results");
}

void write_results_csv(const std::filesystem::path& path, const std::vector<ResultCell>& cells) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorKind::kIoError, "cannot open " + path.string());
  write_results_csv(out, cells);
}

std::vector<ResultCell> read_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || textio::trim(line) != kResultsHeader) {
    raise(ErrorKind::kParseError, "results file must start with the header '" + std::string(kResultsHeader) + "'");
  }
  std::vector<ResultCell> cells;
  std::size_t line_no = 1;
  const auto fail = [&line_no](const std::string& what) -> void {
    raise(ErrorKind::kParseError, "results line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (textio::trim(line).empty()) continue;
    const auto f = textio::split_csv_line(line);
    if (f.size() != 9) fail("expected 9 fields");
    const auto start = textio::parse_u64(f[1]);
    const auto len = textio::parse_u64(f[2]);
    const auto run = textio::parse_u64(f[4]);
    if (!start || !len || !run || *len == 0) fail("bad gap or run field");
    const Gap gap(*start, *len);
    const bool continues = !cells.empty() && cells.back().ok() && cells.back().meter_id == f[0] &&
                           cells.back().gap == gap && cells.back().model == f[3] && cells.back().run == *run &&
                           cells.back().imputed.size() < gap.length();
    if (f[5] != "OK") {
      if (!f[6].empty() || !f[7].empty() || !f[8].empty()) fail("failed cells carry no points");
      cells.push_back({f[0], gap, f[3], *run, f[5], {}, {}});
      continue;
    }
    if (!continues) cells.push_back({f[0], gap, f[3], *run, "OK", {}, {}});
    auto& cell = cells.back();
    const auto index = textio::parse_u64(f[6]);
    const auto truth = textio::parse_double(f[7]);
    const auto imputed = textio::parse_double(f[8]);
    if (!index || *index != cell.imputed.size()) fail("point index out of sequence");
    if (!truth || !imputed) fail("bad point value");
    cell.truth.push_back(*truth);
    cell.imputed.push_back(*imputed);
  }
  for (const auto& c : cells) {
    if (c.ok() && c.imputed.size() != c.gap.length()) {
      raise(ErrorKind::kParseError, "results for " + c.meter_id + " gap " + std::to_string(c.gap.start()) +
                                        " model " + c.model + " are incomplete");
    }
  }
  return cells;
}

std::vector<ResultCell> read_results_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::kIoError, "cannot open " + path.string());
  return read_results_csv(in);
}

}  // namespace gapfill
