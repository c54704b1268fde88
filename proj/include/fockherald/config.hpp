// Copyright 2026 The fockherald Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fockherald/imperfections.hpp"
#include "fockherald/optimizer.hpp"
#include "fockherald/reference_table.hpp"

namespace fockherald {

enum class Command { Evaluate, Optimize, Sweep, ReproduceTable };

/// Schema violation. `field` is the dotted path of the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : "field '" + field + "': " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct OptimizeSpec {
  int search_cutoff = tol::kSearchCutoff;
  GAConfig ga;
  Bounds bounds;
  FixedMask fixed;
  bool polish = false;
  int polish_iters = 2000;
  std::optional<double> delta;
};

enum class SweepKind { Deviation, Efficiency };

struct SweepSpec {
  SweepKind kind = SweepKind::Deviation;
  std::vector<double> values;
  Sampling sampling = Sampling::SignedUniform;
  int n_samples = 32;
  LossPlacement which = LossPlacement::Detector;
};

struct ExperimentConfig {
  Command command = Command::Evaluate;
  std::optional<TargetSpec> target;
  Measurement measurement = Measurement::Spd;
  int cutoff = tol::kDefaultCutoff;
  std::uint64_t seed = 1;
  /// Required by evaluate and sweep.
  std::optional<SchemeParams> params;
  int n_subranges = tol::kAverageMisfitSubranges;
  std::optional<OptimizeSpec> optimize;
  std::optional<SweepSpec> sweep;
  /// reproduce-table: table row numbers and the entries to evaluate (possibly overridden).
  std::vector<int> rows;
  std::vector<TableEntry> entries;
  TolerancePolicy policy;
};

/// Parses and validates a JSON experiment description for `command`.
/// Unknown or inapplicable keys are rejected. Throws ConfigError.
ExperimentConfig parse_config(const std::string& text, Command command);

/// Configuration used by reproduce-table when no file is given.
ExperimentConfig default_reproduce_config();

}  // namespace fockherald
