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

#include "gapfill/timeseries.hpp"

#include <algorithm>
#include <cmath>

#include "gapfill/error.hpp"

namespace gapfill {

SamplingSpec::SamplingSpec(Timestamp start, Duration step, std::size_t n_points)
    : start_(start), step_(step), n_points_(n_points) {
  if (step_.count() <= 0) raise(ErrorKind::kInvalidArgument, "sampling step must be positive");
  if (n_points_ == 0) raise(ErrorKind::kInvalidArgument, "sampling needs at least one point");
}

Timestamp SamplingSpec::time_of(std::size_t index) const {
  if (index >= n_points_) raise(ErrorKind::kInvalidArgument, "index outside sampling range");
  return start_ + step_ * static_cast<std::int64_t>(index);
}

std::optional<std::size_t> SamplingSpec::index_of(Timestamp t) const {
  const auto offset = (t - start_).count();
  if (offset < 0 || offset % step_.count() != 0) return std::nullopt;
  const auto index = static_cast<std::size_t>(offset / step_.count());
  if (index >= n_points_) return std::nullopt;
  return index;
}

MeterSeries::MeterSeries(std::string meter_id, SamplingSpec sampling, std::vector<double> values,
                         std::vector<std::uint8_t> present)
    : meter_id_(std::move(meter_id)),
      sampling_(sampling),
      values_(std::move(values)),
      present_(std::move(present)) {
  if (values_.size() != sampling_.size() || present_.size() != sampling_.size()) {
    raise(ErrorKind::kInvalidArgument, "series '" + meter_id_ + "' length does not match its sampling");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (present_[i] == 0) {
      values_[i] = 0.0;
      continue;
    }
    present_[i] = 1;
    if (!std::isfinite(values_[i]) || values_[i] < 0.0) {
      raise(ErrorKind::kInvalidArgument,
            "series '" + meter_id_ + "' has a non-finite or negative value at index " + std::to_string(i));
    }
  }
}

MeterSeries::MeterSeries(std::string meter_id, SamplingSpec sampling, std::vector<double> values)
    : MeterSeries(std::move(meter_id), sampling, values, std::vector<std::uint8_t>(values.size(), 1)) {}

MeterSeries MeterSeries::from_optional(std::string meter_id, SamplingSpec sampling,
                                       const std::vector<std::optional<double>>& values) {
  std::vector<double> dense(values.size(), 0.0);
  std::vector<std::uint8_t> present(values.size(), 0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i]) {
      dense[i] = *values[i];
      present[i] = 1;
    }
  }
  return MeterSeries(std::move(meter_id), sampling, std::move(dense), std::move(present));
}

std::optional<double> MeterSeries::at(std::size_t i) const {
  if (is_missing(i)) return std::nullopt;
  return values_[i];
}

std::size_t MeterSeries::count_present() const noexcept {
  return static_cast<std::size_t>(std::count(present_.begin(), present_.end(), std::uint8_t{1}));
}

bool MeterSeries::is_clean(std::size_t begin, std::size_t end) const {
  if (begin > end || end > size()) return false;
  return std::all_of(present_.begin() + static_cast<std::ptrdiff_t>(begin),
                     present_.begin() + static_cast<std::ptrdiff_t>(end),
                     [](std::uint8_t p) { return p != 0; });
}

Gap::Gap(std::size_t start, std::size_t length) : start_(start), length_(length) {
  if (length_ == 0) raise(ErrorKind::kInvalidArgument, "gap length must be at least 1");
}

void Gap::check_within(std::size_t series_len) const {
  if (end() > series_len) {
    raise(ErrorKind::kInvalidArgument, "gap [" + std::to_string(start_) + ", " + std::to_string(end()) +
                                           ") exceeds series length " + std::to_string(series_len));
  }
}

Window::Window(std::vector<double> values, std::size_t origin_index)
    : values_(std::move(values)), origin_(origin_index) {
  if (values_.empty()) raise(ErrorKind::kInvalidArgument, "window must be non-empty");
}

namespace {

Window extract_clean(const MeterSeries& series, std::size_t begin, std::size_t end, const char* side) {
  if (!series.is_clean(begin, end)) {
    raise(ErrorKind::kInsufficientContext,
          std::string(side) + " context [" + std::to_string(begin) + ", " + std::to_string(end) +
              ") of '" + series.meter_id() + "' contains missing samples");
  }
  const auto values = series.values();
  return Window(std::vector<double>(values.begin() + static_cast<std::ptrdiff_t>(begin),
                                    values.begin() + static_cast<std::ptrdiff_t>(end)),
                begin);
}

}  // namespace

Window extract_left_context(const MeterSeries& series, const Gap& gap, std::size_t context_len) {
  gap.check_within(series.size());
  if (context_len == 0) raise(ErrorKind::kInvalidArgument, "context length must be positive");
  if (gap.start() < context_len) {
    raise(ErrorKind::kInsufficientContext, "only " + std::to_string(gap.start()) +
                                               " points precede the gap, need " + std::to_string(context_len));
  }
  return extract_clean(series, gap.start() - context_len, gap.start(), "left");
}

Window extract_right_context(const MeterSeries& series, const Gap& gap, std::size_t context_len) {
  gap.check_within(series.size());
  if (context_len == 0) raise(ErrorKind::kInvalidArgument, "context length must be positive");
  const std::size_t available = series.size() - gap.end();
  if (available < context_len) {
    raise(ErrorKind::kInsufficientContext, "only " + std::to_string(available) +
                                               " points follow the gap, need " + std::to_string(context_len));
  }
  return extract_clean(series, gap.end(), gap.end() + context_len, "right");
}

Window reverse(const Window& window) {
  std::vector<double> values(window.values().rbegin(), window.values().rend());
  return Window(std::move(values), window.origin_index());
}

}  // namespace gapfill
