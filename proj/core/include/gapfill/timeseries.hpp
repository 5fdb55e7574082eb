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

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gapfill {

using Timestamp = std::chrono::sys_seconds;
using Duration = std::chrono::seconds;

/// Half-hourly resolution; one sample per 30 minutes.
inline constexpr Duration kHalfHour{1800};
/// Seven days of half-hourly samples.
inline constexpr std::size_t kDefaultContextLen = 336;

class SamplingSpec {
 public:
  SamplingSpec(Timestamp start, Duration step, std::size_t n_points);

  Timestamp start() const noexcept { return start_; }
  Duration step() const noexcept { return step_; }
  std::size_t size() const noexcept { return n_points_; }

  Timestamp time_of(std::size_t index) const;
  /// Index of an exact grid timestamp, or nullopt when off-grid or outside.
  std::optional<std::size_t> index_of(Timestamp t) const;

  bool operator==(const SamplingSpec&) const = default;

 private:
  Timestamp start_;
  Duration step_;
  std::size_t n_points_;
};

/// One meter's regularly sampled consumption in kWh. Missing samples are an
/// explicit state, distinct from a legitimate 0.0 reading.
class MeterSeries {
 public:
  /// `values` and `present` must have the sampling size; present values must
  /// be finite and non-negative. Values at missing slots are ignored.
  MeterSeries(std::string meter_id, SamplingSpec sampling, std::vector<double> values,
              std::vector<std::uint8_t> present);

  /// Fully observed series.
  MeterSeries(std::string meter_id, SamplingSpec sampling, std::vector<double> values);

  static MeterSeries from_optional(std::string meter_id, SamplingSpec sampling,
                                   const std::vector<std::optional<double>>& values);

  const std::string& meter_id() const noexcept { return meter_id_; }
  const SamplingSpec& sampling() const noexcept { return sampling_; }
  std::size_t size() const noexcept { return values_.size(); }

  bool is_missing(std::size_t i) const { return present_.at(i) == 0; }
  std::optional<double> at(std::size_t i) const;
  /// Raw value; 0.0 at missing slots.
  double value(std::size_t i) const { return values_.at(i); }

  std::span<const double> values() const noexcept { return values_; }
  std::span<const std::uint8_t> present_mask() const noexcept { return present_; }

  std::size_t count_present() const noexcept;
  /// True when [begin, end) holds no missing sample.
  bool is_clean(std::size_t begin, std::size_t end) const;

  bool operator==(const MeterSeries&) const = default;

 private:
  std::string meter_id_;
  SamplingSpec sampling_;
  std::vector<double> values_;
  std::vector<std::uint8_t> present_;
};

/// Contiguous interval [start, start + length). Length is at least one.
class Gap {
 public:
  Gap(std::size_t start, std::size_t length);

  std::size_t start() const noexcept { return start_; }
  std::size_t length() const noexcept { return length_; }
  std::size_t end() const noexcept { return start_ + length_; }

  /// Throws InvalidArgument when the gap does not fit in `series_len`.
  void check_within(std::size_t series_len) const;

  auto operator<=>(const Gap&) const = default;

 private:
  std::size_t start_;
  std::size_t length_;
};

/// Clean contiguous extract of a parent series.
class Window {
 public:
  Window(std::vector<double> values, std::size_t origin_index);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t origin_index() const noexcept { return origin_; }
  std::size_t size() const noexcept { return values_.size(); }

  bool operator==(const Window&) const = default;

 private:
  std::vector<double> values_;
  std::size_t origin_;
};

Window extract_left_context(const MeterSeries& series, const Gap& gap,
                            std::size_t context_len = kDefaultContextLen);
Window extract_right_context(const MeterSeries& series, const Gap& gap,
                             std::size_t context_len = kDefaultContextLen);
Window reverse(const Window& window);

}  // namespace gapfill
