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

// Reference adapter: answers every request with the last history value
// repeated `horizon` times.

#include <iostream>
#include <string>

#include "gapfill/adapter.hpp"
#include "gapfill/error.hpp"

int main() {
  std::ios::sync_with_stdio(false);
  std::string line;
  while (std::getline(std::cin, line)) {
    gapfill::ForecastResponse response;
    try {
      const auto request = gapfill::decode_request(line);
      response.id = request.id;
      if (request.history.empty()) {
        response.error = "empty history";
      } else {
        response.values = std::vector<double>(request.horizon, request.history.back());
      }
    } catch (const gapfill::Error& e) {
      response.error = e.what();
    }
    std::cout << gapfill::encode_response(response) << '\n' << std::flush;
  }
  return 0;
}
