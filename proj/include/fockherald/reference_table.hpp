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

#include <optional>
#include <string>
#include <vector>

#include "fockherald/optimizer.hpp"

namespace fockherald {

/// One published optimization result: target, scheme parameters rounded to
/// two decimals, and the reported misfit, success probability and average misfit.
struct TableEntry {
  TargetSpec target;
  SchemeParams params;
  /// Entries printed in bold in the table were fixed by hand before the search.
  FixedMask fixed;
  double eps = 0;
  double success_prob = 0;
  std::optional<double> eps_avg;
  int cutoff = tol::kDefaultCutoff;

  Measurement kind() const { return measurement_of(params); }
  std::string label() const { return describe(target); }
};

/// All 40 rows, in table order.
const std::vector<TableEntry>& reference_table();

/// Regression rows covering every target family and both measurement kinds.
const std::vector<int>& designated_rows();

struct TolerancePolicy {
  /// Misfit ceiling at the rounded tabulated parameters.
  double raw_misfit_limit = 5e-2;
  /// Polished misfit must not exceed this multiple of the tabulated value.
  double polish_factor = 10;
  /// Absolute tolerance on the success probability.
  double prob_tolerance = 0.05;
  double eps_avg_limit = tol::kAverageMisfitTarget;
  bool polish = true;
  int polish_iters = 3000;
};

struct RowReport {
  int index = -1;
  std::string label;
  Measurement kind = Measurement::Spd;
  double eps_table = 0;
  double eps_raw = 1;
  std::optional<double> eps_polished;
  double prob_table = 0;
  double prob = 0;
  std::optional<double> eps_avg;
  SchemeParams polished_params;
  bool raw_ok = false;
  bool polish_ok = true;
  bool prob_ok = false;
  bool eps_avg_ok = true;

  bool pass() const { return raw_ok && polish_ok && prob_ok && eps_avg_ok; }
};

/// Evaluates `entry` at its tabulated parameters and, when the policy asks
/// for it, after a local polish of the unfixed parameters. P and the average
/// misfit are taken at the tabulated parameters.
RowReport reproduce_row(const TableEntry& entry, const TolerancePolicy& policy, int index = -1);

}  // namespace fockherald
