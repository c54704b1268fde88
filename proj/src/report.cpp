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

#include "fockherald/report.hpp"

#include <iomanip>
#include <ostream>

namespace fockherald {
namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void optional_field(std::ostream& os, const std::optional<double>& v) {
  os << ',';
  if (v) os << *v;
}

}  // namespace

std::string_view measurement_name(Measurement kind) { return kind == Measurement::Homodyne ? "hm" : "spd"; }

void write_table_csv(std::ostream& os, std::span<const TableRow> rows) {
  os << kTableHeader << '\n' << std::setprecision(17);
  for (const TableRow& row : rows) {
    os << quoted(row.state) << ',' << row.eps;
    const Eigen::VectorXd v = to_vector(row.params);
    for (int i = 0; i < 9; ++i) os << ',' << v(i);
    if (row.params.homodyne) {
      os << ',' << row.params.homodyne->x << ',' << row.params.homodyne->lambda << ','
         << row.params.homodyne->window_halfwidth;
    } else {
      os << ",,,";
    }
    os << ',' << row.success_prob;
    optional_field(os, row.eps_avg);
    os << '\n';
  }
}

void write_state_csv(std::ostream& os, const Ket& state) {
  os << "n,re,im\n" << std::setprecision(17);
  for (Eigen::Index n = 0; n < state.size(); ++n) os << n << ',' << state(n).real() << ',' << state(n).imag() << '\n';
}

void write_result_record(std::ostream& os, const std::string& label, const OptimizationResult& result) {
  const SchemeParams& p = result.best_params;
  os << std::setprecision(17);
  os << "target = " << label << '\n';
  os << "measurement = " << measurement_name(measurement_of(p)) << '\n';
  os << "seed = " << result.seed << '\n';
  os << "evaluations = " << result.evaluations << '\n';
  os << "best_misfit = " << result.best_misfit << '\n';
  os << "success_prob = " << result.success_prob << '\n';
  if (result.eps_avg) os << "eps_avg = " << *result.eps_avg << '\n';
  os << "truncation_loss = " << result.truncation_loss << '\n';
  const Eigen::VectorXd v = to_vector(p);
  for (Eigen::Index i = 0; i < v.size(); ++i) os << kParameterNames[i] << " = " << v(i) << '\n';
  if (p.homodyne) os << "delta = " << p.homodyne->window_halfwidth << '\n';
  os << "trace_length = " << result.trace.size() << '\n';
  os << "trace =\n";
  for (std::size_t g = 0; g < result.trace.size(); ++g) os << g << ' ' << result.trace[g] << '\n';
}

void write_reproduce_csv(std::ostream& os, std::span<const RowReport> rows) {
  os << "row,state,measurement,eps_table,eps_raw,eps_polished,P_table,P,eps_avg,pass\n" << std::setprecision(17);
  for (const RowReport& r : rows) {
    os << r.index << ',' << quoted(r.label) << ',' << measurement_name(r.kind) << ',' << r.eps_table << ','
       << r.eps_raw;
    optional_field(os, r.eps_polished);
    os << ',' << r.prob_table << ',' << r.prob;
    optional_field(os, r.eps_avg);
    os << ',' << (r.pass() ? "PASS" : "FAIL") << '\n';
  }
}

}  // namespace fockherald
