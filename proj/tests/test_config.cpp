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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>

#include "fockherald/config.hpp"
#include "fockherald/report.hpp"
#include "fockherald/reference_table.hpp"

using namespace fockherald;

namespace {

const char* kEvaluate = R"({
  "target": {"family": "binomial", "p": 0.3, "M": 7},
  "measurement": "spd",
  "params": {"r1": 0.74, "theta1": 3.50, "alpha1": 0.10, "phi1": 2.14,
             "r2": 0.16, "theta2": 4.43, "alpha2": 1.97, "phi2": 0.08, "T": 0.69}
})";

std::string field_of(const std::string& text, Command c) {
  try {
    parse_config(text, c);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<accepted>";
}

}  // namespace

TEST_CASE("evaluate config") {
  const auto cfg = parse_config(kEvaluate, Command::Evaluate);
  CHECK(cfg.cutoff == 40);
  CHECK(cfg.seed == 1);
  CHECK(cfg.measurement == Measurement::Spd);
  REQUIRE(cfg.params.has_value());
  CHECK(cfg.params->transmittance == 0.69);
  CHECK(std::get<BinomialTarget>(*cfg.target).M == 7);
}

TEST_CASE("schema violations name the field") {
  std::string bad = kEvaluate;
  bad.insert(1, "\"colour\": 3,");
  CHECK(field_of(bad, Command::Evaluate) == "colour");

  bad = kEvaluate;
  bad.replace(bad.find("\"T\": 0.69"), 9, "\"T\": 0.69, \"x\": 1");
  CHECK(field_of(bad, Command::Evaluate) == "params.x");

  bad = kEvaluate;
  bad.replace(bad.find("\"M\": 7"), 6, "\"M\": 7.5");
  CHECK(field_of(bad, Command::Evaluate) == "target.M");

  bad = kEvaluate;
  bad.replace(bad.find("\"spd\""), 5, "\"pnr\"");
  CHECK(field_of(bad, Command::Evaluate) == "measurement");

  CHECK(field_of(R"({"target": {"family": "binomial", "p": 0.3, "M": 7}, "measurement": "spd"})", Command::Evaluate) ==
        "params");
  // optimize settings are not part of an evaluate run
  bad = kEvaluate;
  bad.insert(1, "\"optimize\": {},");
  CHECK(field_of(bad, Command::Evaluate) == "optimize");
}

TEST_CASE("comments are allowed") {
  const std::string text = std::string("// header\n/* block */") + kEvaluate;
  CHECK(parse_config(text, Command::Evaluate).params->transmittance == 0.69);
}

TEST_CASE("malformed json reports the position") {
  try {
    parse_config("{\n  \"target\": {,\n}", Command::Evaluate);
    FAIL("expected a parse error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("target families") {
  const auto parse_target = [](const std::string& t) {
    return *parse_config(R"({"measurement": "spd", "optimize": {}, "target": )" + t + "}", Command::Optimize).target;
  };
  const auto nb = std::get<NegativeBinomialTarget>(parse_target(R"({"family": "negative_binomial", "eta": 0.5, "M": 5, "varphi": 0.7})"));
  CHECK(nb.varphi == 0.7);
  const auto as = std::get<AmplitudeSqueezedTarget>(parse_target(R"({"family": "amplitude_squeezed", "alpha0": 1, "u": 0.5, "delta": 1})"));
  CHECK(as.u == 0.5);
  const auto rs = std::get<ResourceTarget>(parse_target(R"({"family": "resource", "zeta": [0, 0.1], "chi_prime": 0.15})"));
  CHECK(rs.zeta == Complex(0, 0.1));
  const auto ah = std::get<AdHocTarget>(parse_target(R"({"family": "adhoc", "coefficients": [0, 1, [0, 0.3]]})"));
  CHECK(ah.coefficients.size() == 3);
  CHECK(ah.coefficients[2] == Complex(0, 0.3));
  CHECK(field_of(R"({"measurement": "spd", "target": {"family": "cat"}})", Command::Optimize) == "target.family");
}

TEST_CASE("optimize config") {
  const auto cfg = parse_config(R"({
    "target": {"family": "binomial", "p": 0.3, "M": 7}, "measurement": "hm", "seed": 9,
    "optimize": {"ga": {"population_size": 20, "generations": 3, "restarts": 1},
                 "bounds": {"T": [0.2, 0.8]}, "fixed": {"lambda": 0.5}, "delta": 0.2, "polish": true}
  })", Command::Optimize);
  REQUIRE(cfg.optimize.has_value());
  CHECK(cfg.seed == 9);
  CHECK(cfg.optimize->ga.population_size == 20);
  CHECK(cfg.optimize->bounds.lo(8) == 0.2);
  CHECK(cfg.optimize->fixed.pinned[10] == 0.5);
  CHECK(cfg.optimize->delta == 0.2);
  CHECK(cfg.optimize->polish);

  CHECK(field_of(R"({"target": {"family": "binomial", "p": 0.3, "M": 7}, "measurement": "spd",
                     "optimize": {"ga": {"generations": 0}}})",
                 Command::Optimize) == "optimize.ga.generations");
  CHECK(field_of(R"({"target": {"family": "binomial", "p": 0.3, "M": 7}, "measurement": "spd",
                     "optimize": {"fixed": {"r1": 3.0}}})",
                 Command::Optimize) == "optimize.fixed.r1");
  CHECK(field_of(R"({"target": {"family": "binomial", "p": 0.3, "M": 7}, "measurement": "spd",
                     "optimize": {"bounds": {"lambda": [0, 1]}}})",
                 Command::Optimize) == "optimize.bounds.lambda");
}

TEST_CASE("sweep config") {
  std::string text = kEvaluate;
  text.insert(1, R"("sweep": {"kind": "efficiency", "values": [1, 0.9], "which": "both"},)");
  const auto cfg = parse_config(text, Command::Sweep);
  CHECK(cfg.sweep->which == LossPlacement::Both);
  text = kEvaluate;
  text.insert(1, R"("sweep": {"kind": "deviation", "values": [0, 0.3]},)");
  CHECK(field_of(text, Command::Sweep) == "sweep.values[1]");
}

TEST_CASE("reproduce-table config") {
  CHECK(parse_config(R"({"rows": []})", Command::ReproduceTable).entries.empty());
  CHECK(parse_config(R"({"rows": "all"})", Command::ReproduceTable).entries.size() == 40);
  const auto cfg = parse_config(R"({"rows": [1, {"row": 2, "override": {"T": 0.5, "delta": 0.1}}], "polish": false})",
                                Command::ReproduceTable);
  CHECK(cfg.rows == std::vector<int>{1, 2});
  CHECK(cfg.entries[1].params.transmittance == 0.5);
  CHECK(cfg.entries[1].params.homodyne->window_halfwidth == 0.1);
  CHECK(!cfg.policy.polish);
  CHECK(default_reproduce_config().rows == designated_rows());
  CHECK(field_of(R"({"rows": [40]})", Command::ReproduceTable) == "rows[0]");
  CHECK(field_of(R"({"rows": "some"})", Command::ReproduceTable) == "rows");
}

TEST_CASE("built-in table") {
  const auto& rows = reference_table();
  CHECK(rows.size() == 40);
  std::set<std::size_t> families;
  std::set<Measurement> kinds;
  for (int i : designated_rows()) {
    families.insert(rows[i].target.index());
    kinds.insert(rows[i].kind());
  }
  CHECK(families.size() == 5);
  CHECK(kinds.size() == 2);
  for (const auto& e : rows) {
    CHECK(static_cast<int>(e.fixed.pinned.size()) == parameter_count(e.kind()));
    CHECK(e.eps_avg.has_value() == (e.kind() == Measurement::Homodyne));
    const Eigen::VectorXd v = to_vector(e.params);
    for (std::size_t i = 0; i < e.fixed.pinned.size(); ++i) {
      if (e.fixed.pinned[i]) CHECK(*e.fixed.pinned[i] == v(static_cast<Eigen::Index>(i)));
    }
  }
  CHECK(rows[1].label() == "|0.3,7>_B");
  CHECK(rows[0].fixed.free_count() == 7);
}

TEST_CASE("row reproduction") {
  TolerancePolicy policy;
  policy.polish_iters = 800;
  const RowReport ok = reproduce_row(reference_table()[1], policy, 1);
  CHECK(ok.pass());
  CHECK(*ok.eps_polished <= ok.eps_raw);

  TableEntry corrupted = reference_table()[1];
  corrupted.params.transmittance = 0.15;
  policy.polish = false;
  const RowReport bad = reproduce_row(corrupted, policy, 1);
  CHECK(!bad.pass());
}

TEST_CASE("csv output") {
  std::ostringstream os;
  const std::vector<TableRow> rows{
      {"|0.3,7>_B", 1e-4, reference_table()[1].params, 0.3, std::nullopt},
      {"|0.45,8>_B", 2e-4, reference_table()[2].params, 0.25, 0.008},
  };
  write_table_csv(os, rows);
  std::istringstream in(os.str());
  std::string header, spd, hm;
  std::getline(in, header);
  std::getline(in, spd);
  std::getline(in, hm);
  CHECK(header == kTableHeader);
  CHECK(spd.rfind("\"|0.3,7>_B\",0.0001,0.73999999999999999,", 0) == 0);
  CHECK(spd.find(",,,,") != std::string::npos);
  CHECK(spd.back() == ',');
  CHECK(hm.find(",0.60999999999999999,0.040000000000000001,0.29999999999999999,") != std::string::npos);

  std::ostringstream st;
  Ket k(2);
  k << Complex(1, 0), Complex(0, -0.5);
  write_state_csv(st, k);
  CHECK(st.str() == "n,re,im\n0,1,0\n1,0,-0.5\n");
}

TEST_CASE("result record") {
  OptimizationResult r;
  r.best_params = reference_table()[2].params;
  r.best_misfit = 1e-3;
  r.eps_avg = 0.008;
  r.trace = {0.5, 0.1};
  r.seed = 4;
  std::ostringstream os;
  write_result_record(os, "|0.45,8>_B", r);
  const std::string s = os.str();
  CHECK(s.find("measurement = hm\n") != std::string::npos);
  CHECK(s.find("seed = 4\n") != std::string::npos);
  CHECK(s.find("lambda = 0.040000000000000001\n") != std::string::npos);
  CHECK(s.find("trace =\n0 0.5\n1 0.10000000000000001\n") != std::string::npos);
}
