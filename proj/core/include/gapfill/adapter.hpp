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
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <sys/types.h>
#include <vector>

#include "gapfill/forecaster.hpp"

namespace gapfill {

/// An external forecaster reached over newline-delimited JSON on the child
/// process's stdin/stdout:
///
///   request  {"id":<u64>,"step_s":<u32>,"horizon":<u32>,"history":[<f64>...]}
///   response {"id":<u64>,"values":[<f64>...]}  or  {"id":<u64>,"error":"<msg>"}
struct AdapterSpec {
  std::string name;
  std::vector<std::string> command;
  std::chrono::milliseconds timeout{30'000};
  std::size_t max_retries = 2;
  bool deterministic = true;
  std::string category = "External";
  /// Extra environment for the child, on top of the inherited one.
  std::map<std::string, std::string> environment;

  void validate() const;
};

struct ForecastRequest {
  std::uint64_t id = 0;
  std::uint32_t step_s = 1800;
  std::uint32_t horizon = 0;
  std::vector<double> history;
};

struct ForecastResponse {
  std::uint64_t id = 0;
  std::optional<std::vector<double>> values;
  std::optional<std::string> error;
};

/// Wire encoding; numbers use the shortest round-trip decimal form.
std::string encode_request(const ForecastRequest& request);
ForecastRequest decode_request(std::string_view line);
std::string encode_response(const ForecastResponse& response);
/// Throws AdapterMalformedResponse on anything that is not a well-formed
/// response object.
ForecastResponse decode_response(std::string_view line);

/// Child process connected through a socket pair (writes never raise
/// SIGPIPE). Not thread-safe; AdapterForecaster serialises access.
class AdapterProcess {
 public:
  explicit AdapterProcess(const AdapterSpec& spec);
  ~AdapterProcess();
  AdapterProcess(const AdapterProcess&) = delete;
  AdapterProcess& operator=(const AdapterProcess&) = delete;

  enum class Status { kOk, kTimeout, kClosed };

  /// Writes `line` + '\n' and waits up to `timeout` for one response line.
  Status exchange(std::string_view line, std::chrono::milliseconds timeout, std::string& response);
  void terminate() noexcept;

 private:
  pid_t pid_ = -1;
  int fd_ = -1;
  std::string buffer_;
};

class AdapterForecaster final : public Forecaster {
 public:
  explicit AdapterForecaster(AdapterSpec spec, std::uint32_t step_seconds = 1800);
  ~AdapterForecaster() override;

  std::string_view name() const override { return spec_.name; }
  bool deterministic() const override { return spec_.deterministic; }
  /// Serialised: concurrent callers queue on one child process.
  std::vector<double> forecast(std::span<const double> history, std::size_t horizon) const override;

  const AdapterSpec& spec() const noexcept { return spec_; }

 private:
  AdapterSpec spec_;
  std::uint32_t step_seconds_;
  mutable std::mutex mutex_;
  mutable std::unique_ptr<AdapterProcess> process_;
  mutable std::uint64_t next_id_ = 1;
};

}  // namespace gapfill
