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

#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "fockherald/optimizer.hpp"
#include "fockherald/reference_table.hpp"

namespace fockherald {

/// One line of the results table. Homodyne-only columns stay blank for SPD rows.
struct TableRow {
  std::string state;
  double eps = 0;
  SchemeParams params;
  double success_prob = 0;
  std::optional<double> eps_avg;
};

inline constexpr const char* kTableHeader = "state,eps,r1,theta1,alpha1,phi1,r2,theta2,alpha2,phi2,T,x,lambda,delta,P,eps_avg";

void write_table_csv(std::ostream& os, std::span<const TableRow> rows);

/// n,re,im with 17 significant digits.
void write_state_csv(std::ostream& os, const Ket& state);

/// key = value lines followed by the full best-so-far trace.
void write_result_record(std::ostream& os, const std::string& label, const OptimizationResult& result);

void write_reproduce_csv(std::ostream& os, std::span<const RowReport> rows);

std::string_view measurement_name(Measurement kind);

}  // namespace fockherald
