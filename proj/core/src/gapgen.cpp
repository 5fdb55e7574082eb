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

#include "gapfill/gapgen.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "gapfill/error.hpp"
#include "gapfill/rng.hpp"
#include "gapfill/textio.hpp"

namespace gapfill {

std::size_t GapPlan::total_gaps() const {
  std::size_t n = 0;
  for (const auto& [id, g] : gaps) n += g.size();
  return n;
}

std::size_t draw_gap_length(RandomStream& stream, std::size_t max_gap_len) {
  return static_cast<std::size_t>(stream.uniform_int(1, max_gap_len));
}

namespace {

// Start positions s for a gap of `length` such that the gap plus its two
// contexts stays inside the series, is free of missing samples, and keeps
// `context_len` separation from every gap already placed.
std::vector<std::size_t> feasible_starts(const std::vector<std::size_t>& missing_prefix, std::size_t n,
                                         std::size_t length, std::size_t context_len,
                                         const std::vector<Gap>& placed) {
  std::vector<std::size_t> starts;
  if (n < length + 2 * context_len) return starts;
  for (std::size_t s = context_len; s + length + context_len <= n; ++s) {
    const std::size_t lo = s - context_len;
    const std::size_t hi = s + length + context_len;
    if (missing_prefix[hi] != missing_prefix[lo]) continue;
    const bool separated = std::all_of(placed.begin(), placed.end(), [&](const Gap& g) {
      return s + length + context_len <= g.start() || s >= g.end() + context_len;
    });
    if (separated) starts.push_back(s);
  }
  return starts;
}

}  // namespace

GapPlan generate_plan(const std::vector<MeterSeries>& series, const GapPlanParams& params) {
  if (params.gaps_per_meter > 0 && params.max_gap_len == 0) {
    raise(ErrorKind::kInvalidArgument, "max_gap_len must be at least 1");
  }
  GapPlan plan;
  plan.params = params;
  for (const auto& s : series) {
    auto& placed = plan.gaps[s.meter_id()];
    if (params.gaps_per_meter == 0) continue;

    std::vector<std::size_t> missing_prefix(s.size() + 1, 0);
    for (std::size_t i = 0; i < s.size(); ++i) missing_prefix[i + 1] = missing_prefix[i] + (s.is_missing(i) ? 1 : 0);

    RandomStream stream(derive_key(params.seed, "gapgen", s.meter_id()));
    std::size_t attempts = 0;
    while (placed.size() < params.gaps_per_meter) {
      if (attempts++ >= params.max_attempts) {
        raise(ErrorKind::kInfeasiblePlan, "meter '" + s.meter_id() + "': placed " + std::to_string(placed.size()) +
                                              " of " + std::to_string(params.gaps_per_meter) + " gaps in " +
                                              std::to_string(params.max_attempts) + " attempts");
      }
      const std::size_t length = draw_gap_length(stream, params.max_gap_len);
      const auto starts = feasible_starts(missing_prefix, s.size(), length, params.context_len, placed);
      if (starts.empty()) {
        // Feasibility shrinks with length; nothing fits once length 1 fails.
        if (length == 1 || feasible_starts(missing_prefix, s.size(), 1, params.context_len, placed).empty()) {
          raise(ErrorKind::kInfeasiblePlan, "meter '" + s.meter_id() + "' has no room for gap " +
                                                std::to_string(placed.size() + 1) + " of " +
                                                std::to_string(params.gaps_per_meter));
        }
        continue;
      }
      const std::size_t start = starts[stream.below(starts.size())];
      placed.emplace_back(start, length);
    }
    std::sort(placed.begin(), placed.end());
  }
  return plan;
}

const MeterSeries& MaskedDataset::series(const std::string& meter_id) const {
  for (const auto& s : masked) {
    if (s.meter_id() == meter_id) return s;
  }
  raise(ErrorKind::kPlanMismatch, "meter '" + meter_id + "' is not in the masked dataset");
}

MaskedDataset apply_plan(const std::vector<MeterSeries>& series, const GapPlan& plan) {
  for (const auto& [id, gaps] : plan.gaps) {
    const bool known = std::any_of(series.begin(), series.end(), [&](const MeterSeries& s) { return s.meter_id() == id; });
    if (!known) raise(ErrorKind::kPlanMismatch, "plan references unknown meter '" + id + "'");
  }
  MaskedDataset out;
  out.masked.reserve(series.size());
  for (const auto& s : series) {
    const auto it = plan.gaps.find(s.meter_id());
    if (it == plan.gaps.end()) {
      out.masked.push_back(s);
      continue;
    }
    std::vector<double> values(s.values().begin(), s.values().end());
    std::vector<std::uint8_t> present(s.present_mask().begin(), s.present_mask().end());
    auto& truths = out.truth[s.meter_id()];
    for (const auto& gap : it->second) {
      if (gap.end() > s.size()) {
        raise(ErrorKind::kPlanMismatch, "gap at " + std::to_string(gap.start()) + " exceeds meter '" + s.meter_id() + "'");
      }
      MaskedGap mg{gap, {}};
      for (std::size_t i = gap.start(); i < gap.end(); ++i) {
        if (present[i] == 0) {
          raise(ErrorKind::kPreexistingMissing, "meter '" + s.meter_id() + "' index " + std::to_string(i) +
                                                    " is already missing or covered by another gap");
        }
        mg.truth.push_back(values[i]);
        present[i] = 0;
      }
      truths.push_back(std::move(mg));
    }
    out.masked.emplace_back(s.meter_id(), s.sampling(), std::move(values), std::move(present));
  }
  return out;
}

std::vector<MeterSeries> unmask(const MaskedDataset& dataset) {
  std::vector<MeterSeries> out;
  out.reserve(dataset.masked.size());
  for (const auto& s : dataset.masked) {
    const auto it = dataset.truth.find(s.meter_id());
    if (it == dataset.truth.end()) {
      out.push_back(s);
      continue;
    }
    std::vector<double> values(s.values().begin(), s.values().end());
    std::vector<std::uint8_t> present(s.present_mask().begin(), s.present_mask().end());
    for (const auto& mg : it->second) {
      for (std::size_t i = 0; i < mg.truth.size(); ++i) {
        values[mg.gap.start() + i] = mg.truth[i];
        present[mg.gap.start() + i] = 1;
      }
    }
    out.emplace_back(s.meter_id(), s.sampling(), std::move(values), std::move(present));
  }
  return out;
}

void write_plan_csv(std::ostream& out, const GapPlan& plan) {
  const auto& p = plan.params;
  out << "# gapfill-plan seed=" << p.seed << " gaps_per_meter=" << p.gaps_per_meter
      << " max_gap_len=" << p.max_gap_len << " context_len=" << p.context_len << " max_attempts=" << p.max_attempts
      << '\n';
  out << "meter_id,start_index,length\n";
  for (const auto& [id, gaps] : plan.gaps) {
    for (const auto& g : gaps) out << textio::csv_field(id) << ',' << g.start() << ',' << g.length() << '\n';
  }
}

void write_plan_csv(const std::filesystem::path& path, const GapPlan& plan) {
  std::ofstream out(path);
  if (!out) raise(ErrorKind::kIoError, "cannot write '" + path.string() + "'");
  write_plan_csv(out, plan);
}

GapPlan read_plan_csv(std::istream& in) {
  GapPlan plan;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# gapfill-plan", 0) != 0) {
    raise(ErrorKind::kParseError, "line 1: expected '# gapfill-plan' header");
  }
  std::istringstream header(line.substr(14));
  std::string token;
  while (header >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) raise(ErrorKind::kParseError, "line 1: malformed parameter '" + token + "'");
    const auto value = textio::parse_u64(std::string_view(token).substr(eq + 1));
    if (!value) raise(ErrorKind::kParseError, "line 1: malformed parameter '" + token + "'");
    const auto key = token.substr(0, eq);
    if (key == "seed") plan.params.seed = *value;
    else if (key == "gaps_per_meter") plan.params.gaps_per_meter = *value;
    else if (key == "max_gap_len") plan.params.max_gap_len = *value;
    else if (key == "context_len") plan.params.context_len = *value;
    else if (key == "max_attempts") plan.params.max_attempts = *value;
    else raise(ErrorKind::kParseError, "line 1: unknown parameter '" + key + "'");
  }
  if (!std::getline(in, line) || textio::trim(line) != "meter_id,start_index,length") {
    raise(ErrorKind::kParseError, "line 2: expected column header");
  }
  std::size_t line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (textio::trim(line).empty()) continue;
    const auto fields = textio::split_csv_line(line);
    const auto start = fields.size() == 3 ? textio::parse_u64(fields[1]) : std::nullopt;
    const auto length = fields.size() == 3 ? textio::parse_u64(fields[2]) : std::nullopt;
    if (!start || !length || *length == 0) {
      raise(ErrorKind::kParseError, "line " + std::to_string(line_no) + ": malformed gap row");
    }
    plan.gaps[fields[0]].emplace_back(*start, *length);
  }
  return plan;
}

GapPlan read_plan_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::kIoError, "cannot open '" + path.string() + "'");
  return read_plan_csv(in);
}

}  // namespace gapfill
