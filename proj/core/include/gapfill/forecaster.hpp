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

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "gapfill/timeseries.hpp"

namespace gapfill {

/// Fitted-parameter dump for verbose runs, as (name, value) pairs.
using FitDiagnostics = std::vector<std::pair<std::string, double>>;

/// Produces `horizon` values continuing a clean history. Implementations are
/// immutable after construction; `forecast` may be called concurrently
/// unless the implementation documents otherwise.
class Forecaster {
 public:
  virtual ~Forecaster() = default;

  virtual std::string_view name() const = 0;
  virtual bool deterministic() const { return true; }
  virtual std::vector<double> forecast(std::span<const double> history, std::size_t horizon) const = 0;
  virtual FitDiagnostics diagnostics(std::span<const double> /*history*/) const { return {}; }
};

/// Fills a whole gap at once from the surrounding (masked) series.
class DirectImputer {
 public:
  virtual ~DirectImputer() = default;

  virtual std::string_view name() const = 0;
  virtual std::vector<double> impute(const MeterSeries& series, const Gap& gap) const = 0;
  virtual FitDiagnostics diagnostics(const MeterSeries& /*series*/, const Gap& /*gap*/) const { return {}; }
};

/// A roster entry: either contract, behind shared ownership so one fitted
/// configuration can serve many concurrent tasks.
class Model {
 public:
  Model(std::shared_ptr<const Forecaster> f) : impl_(std::move(f)) {}
  Model(std::shared_ptr<const DirectImputer> d) : impl_(std::move(d)) {}

  std::string_view name() const;
  bool deterministic() const;

  const Forecaster* forecaster() const;
  const DirectImputer* direct_imputer() const;

 private:
  std::variant<std::shared_ptr<const Forecaster>, std::shared_ptr<const DirectImputer>> impl_;
};

inline std::string_view Model::name() const {
  return std::visit([](const auto& p) { return p->name(); }, impl_);
}

inline bool Model::deterministic() const {
  if (const auto* f = forecaster()) return f->deterministic();
  return true;
}

inline const Forecaster* Model::forecaster() const {
  const auto* p = std::get_if<std::shared_ptr<const Forecaster>>(&impl_);
  return p ? p->get() : nullptr;
}

inline const DirectImputer* Model::direct_imputer() const {
  const auto* p = std::get_if<std::shared_ptr<const DirectImputer>>(&impl_);
  return p ? p->get() : nullptr;
}

}  // namespace gapfill
