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

#include "gapfill/adapter.hpp"

#include <poll.h>
#include <spawn.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <csignal>
#include <cstring>
#include <json.hpp>
#include <thread>

#include "gapfill/error.hpp"
#include "gapfill/textio.hpp"

extern char** environ;

namespace gapfill {

void AdapterSpec::validate() const {
  if (name.empty()) raise(ErrorKind::kConfigError, "adapter needs a name");
  if (command.empty() || command.front().empty()) raise(ErrorKind::kConfigError, "adapter '" + name + "' has no command");
  if (timeout.count() <= 0) raise(ErrorKind::kConfigError, "adapter '" + name + "' timeout must be positive");
}

namespace {

void append_array(std::string& out, std::span<const double> values) {
  out.push_back('[');
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out.push_back(',');
    out += textio::format_double(values[i]);
  }
  out.push_back(']');
}

std::vector<double> number_array(const nlohmann::json& j, ErrorKind kind, const char* what) {
  if (!j.is_array()) raise(kind, std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) raise(kind, std::string(what) + " must hold numbers only");
    const double d = v.get<double>();
    if (!std::isfinite(d)) raise(kind, std::string(what) + " holds a non-finite number");
    out.push_back(d);
  }
  return out;
}

template <typename T>
T unsigned_field(const nlohmann::json& j, const char* key, ErrorKind kind) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number_unsigned()) raise(kind, std::string("missing unsigned field '") + key + "'");
  const auto v = it->get<std::uint64_t>();
  if (v > std::numeric_limits<T>::max()) raise(kind, std::string("field '") + key + "' out of range");
  return static_cast<T>(v);
}

nlohmann::json parse_object(std::string_view line, ErrorKind kind) {
  nlohmann::json j = nlohmann::json::parse(line.begin(), line.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) raise(kind, "line is not a JSON object");
  return j;
}

}  // namespace

std::string encode_request(const ForecastRequest& request) {
  std::string out = "{\"id\":" + std::to_string(request.id) + ",\"step_s\":" + std::to_string(request.step_s) +
                    ",\"horizon\":" + std::to_string(request.horizon) + ",\"history\":";
  append_array(out, request.history);
  out.push_back('}');
  return out;
}

ForecastRequest decode_request(std::string_view line) {
  const auto kind = ErrorKind::kParseError;
  const auto j = parse_object(line, kind);
  ForecastRequest r;
  r.id = unsigned_field<std::uint64_t>(j, "id", kind);
  r.step_s = unsigned_field<std::uint32_t>(j, "step_s", kind);
  r.horizon = unsigned_field<std::uint32_t>(j, "horizon", kind);
  const auto it = j.find("history");
  if (it == j.end()) raise(kind, "missing field 'history'");
  r.history = number_array(*it, kind, "history");
  return r;
}

std::string encode_response(const ForecastResponse& response) {
  std::string out = "{\"id\":" + std::to_string(response.id);
  if (response.values) {
    out += ",\"values\":";
    append_array(out, *response.values);
  } else {
    out += ",\"error\":" + nlohmann::json(response.error.value_or("")).dump();
  }
  out.push_back('}');
  return out;
}

ForecastResponse decode_response(std::string_view line) {
  const auto kind = ErrorKind::kAdapterMalformedResponse;
  const auto j = parse_object(line, kind);
  ForecastResponse r;
  r.id = unsigned_field<std::uint64_t>(j, "id", kind);
  const auto values = j.find("values");
  const auto error = j.find("error");
  if ((values == j.end()) == (error == j.end())) raise(kind, "response needs exactly one of 'values' or 'error'");
  if (values != j.end()) {
    r.values = number_array(*values, kind, "values");
  } else {
    if (!error->is_string()) raise(kind, "'error' must be a string");
    r.error = error->get<std::string>();
  }
  return r;
}

AdapterProcess::AdapterProcess(const AdapterSpec& spec) {
  int fds[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, fds) != 0) {
    raise(ErrorKind::kAdapterCrashed, std::string("socketpair failed: ") + std::strerror(errno));
  }

  std::vector<std::string> env_storage;
  for (char** e = environ; e && *e; ++e) {
    const std::string_view entry(*e);
    const auto eq = entry.find('=');
    if (eq != std::string_view::npos && spec.environment.count(std::string(entry.substr(0, eq)))) continue;
    env_storage.emplace_back(entry);
  }
  for (const auto& [k, v] : spec.environment) env_storage.push_back(k + "=" + v);
  std::vector<char*> envp;
  for (auto& s : env_storage) envp.push_back(s.data());
  envp.push_back(nullptr);

  std::vector<std::string> args = spec.command;
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, fds[1], STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, fds[1], STDOUT_FILENO);
  const int rc = ::posix_spawnp(&pid_, argv[0], &actions, nullptr, argv.data(), envp.data());
  posix_spawn_file_actions_destroy(&actions);
  ::close(fds[1]);
  if (rc != 0) {
    ::close(fds[0]);
    pid_ = -1;
    raise(ErrorKind::kAdapterCrashed, "cannot launch '" + spec.command.front() + "': " + std::strerror(rc));
  }
  fd_ = fds[0];
}

AdapterProcess::~AdapterProcess() { terminate(); }

void AdapterProcess::terminate() noexcept {
  if (fd_ >= 0) {
    ::shutdown(fd_, SHUT_WR);
  }
  if (pid_ > 0) {
    int status = 0;
    bool reaped = false;
    for (int i = 0; i < 50 && !reaped; ++i) {
      if (::waitpid(pid_, &status, WNOHANG) == pid_) {
        reaped = true;
      } else {
        std::this_thread::sleep_for(std::chrono::milliseconds(10));
      }
    }
    if (!reaped) {
      ::kill(pid_, SIGKILL);
      ::waitpid(pid_, &status, 0);
    }
    pid_ = -1;
  }
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
  buffer_.clear();
}

AdapterProcess::Status AdapterProcess::exchange(std::string_view line, std::chrono::milliseconds timeout,
                                                std::string& response) {
  if (fd_ < 0) return Status::kClosed;
  std::string payload(line);
  payload.push_back('\n');
  std::size_t sent = 0;
  while (sent < payload.size()) {
    const ssize_t n = ::send(fd_, payload.data() + sent, payload.size() - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      return Status::kClosed;
    }
    sent += static_cast<std::size_t>(n);
  }

  const auto deadline = std::chrono::steady_clock::now() + timeout;
  char chunk[65536];
  for (;;) {
    const auto newline = buffer_.find('\n');
    if (newline != std::string::npos) {
      response = buffer_.substr(0, newline);
      buffer_.erase(0, newline + 1);
      return Status::kOk;
    }
    const auto remaining =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (remaining.count() <= 0) return Status::kTimeout;
    pollfd pfd{fd_, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, static_cast<int>(remaining.count()));
    if (ready < 0) {
      if (errno == EINTR) continue;
      return Status::kClosed;
    }
    if (ready == 0) return Status::kTimeout;
    const ssize_t n = ::recv(fd_, chunk, sizeof chunk, 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return Status::kClosed;
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

AdapterForecaster::AdapterForecaster(AdapterSpec spec, std::uint32_t step_seconds)
    : spec_(std::move(spec)), step_seconds_(step_seconds) {
  spec_.validate();
}

AdapterForecaster::~AdapterForecaster() = default;

std::vector<double> AdapterForecaster::forecast(std::span<const double> history, std::size_t horizon) const {
  std::lock_guard lock(mutex_);
  ForecastRequest request;
  request.step_s = step_seconds_;
  request.horizon = static_cast<std::uint32_t>(horizon);
  request.history.assign(history.begin(), history.end());

  ErrorKind last_kind = ErrorKind::kAdapterTimeout;
  std::string last_message;
  for (std::size_t attempt = 0; attempt <= spec_.max_retries; ++attempt) {
    if (!process_) process_ = std::make_unique<AdapterProcess>(spec_);
    request.id = next_id_++;
    std::string line;
    const auto status = process_->exchange(encode_request(request), spec_.timeout, line);
    if (status == AdapterProcess::Status::kClosed) {
      process_.reset();
      raise(ErrorKind::kAdapterCrashed, "adapter '" + spec_.name + "' closed its pipe");
    }
    if (status == AdapterProcess::Status::kTimeout) {
      // A late answer would desynchronise the stream; start a fresh child.
      process_.reset();
      last_kind = ErrorKind::kAdapterTimeout;
      last_message = "no response within " + std::to_string(spec_.timeout.count()) + " ms";
      continue;
    }
    try {
      const auto response = decode_response(line);
      if (response.id != request.id) {
        raise(ErrorKind::kAdapterMalformedResponse, "response id " + std::to_string(response.id) +
                                                        " does not echo request id " + std::to_string(request.id));
      }
      if (response.error) raise(ErrorKind::kAdapterError, "adapter '" + spec_.name + "': " + *response.error);
      if (response.values->size() != horizon) {
        raise(ErrorKind::kAdapterMalformedResponse, "expected " + std::to_string(horizon) + " values, got " +
                                                        std::to_string(response.values->size()));
      }
      return *response.values;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kAdapterMalformedResponse) throw;
      last_kind = e.kind();
      last_message = e.what();
    }
  }
  raise(last_kind, "adapter '" + spec_.name + "' failed after " + std::to_string(spec_.max_retries + 1) +
                       " attempts: " + last_message);
}

}  // namespace gapfill
