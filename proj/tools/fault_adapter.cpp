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

// Misbehaving adapter for failure-path tests. In the default `cycle` mode the
// behaviour depends on horizon % 4: 1 sleeps past any sane timeout, 2 sends
// one value too few, 3 answers with an error, 0 echoes like the reference
// adapter. Fixed modes: echo, sleep, short, error, garbage, crash.

#include <chrono>
#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include "gapfill/adapter.hpp"
#include "gapfill/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"gapfill fault-injecting adapter"};
  std::string mode = "cycle";
  int sleep_ms = 10'000;
  app.add_option("--mode", mode, "cycle, echo, sleep, short, error, garbage or crash")
      ->check(CLI::IsMember({"cycle", "echo", "sleep", "short", "error", "garbage", "crash"}));
  app.add_option("--sleep-ms", sleep_ms, "how long the sleep behaviour stalls");
  CLI11_PARSE(app, argc, argv);

  std::string line;
  while (std::getline(std::cin, line)) {
    gapfill::ForecastRequest request;
    try {
      request = gapfill::decode_request(line);
    } catch (const gapfill::Error&) {
      std::cout << "{\"id\":0,\"error\":\"bad request\"}\n" << std::flush;
      continue;
    }
    std::string behaviour = mode;
    if (mode == "cycle") {
      static const char* const kCycle[] = {"echo", "sleep", "short", "error"};
      behaviour = kCycle[request.horizon % 4];
    }
    const double last = request.history.empty() ? 0.0 : request.history.back();
    gapfill::ForecastResponse response;
    response.id = request.id;
    if (behaviour == "crash") {
      std::_Exit(3);
    } else if (behaviour == "garbage") {
      std::cout << "this is not json\n" << std::flush;
      continue;
    } else if (behaviour == "sleep") {
      std::this_thread::sleep_for(std::chrono::milliseconds(sleep_ms));
      response.values = std::vector<double>(request.horizon, last);
    } else if (behaviour == "short") {
      response.values = std::vector<double>(request.horizon > 0 ? request.horizon - 1 : 0, last);
    } else if (behaviour == "error") {
      response.error = "injected failure";
    } else {
      response.values = std::vector<double>(request.horizon, last);
    }
    std::cout << gapfill::encode_response(response) << '\n' << std::flush;
  }
  return 0;
}
