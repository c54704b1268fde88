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

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "fockherald/config.hpp"
#include "fockherald/errors.hpp"
#include "fockherald/imperfections.hpp"
#include "fockherald/optimizer.hpp"
#include "fockherald/report.hpp"
#include "fockherald/reference_table.hpp"

namespace fs = std::filesystem;
using namespace fockherald;

namespace {

enum Exit { kOk = 0, kValidation = 1, kNumeric = 2, kAcceptance = 3 };

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> cutoff;
  std::string out = ".";
  bool quiet = false;
};

struct Output {
  std::vector<std::pair<std::string, std::string>> files;
  int status = kOk;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig load(Command command, const Flags& flags) {
  ExperimentConfig cfg;
  if (flags.config.empty()) {
    if (command != Command::ReproduceTable) throw ConfigError("", "--config is required");
    cfg = default_reproduce_config();
  } else {
    cfg = parse_config(read_file(flags.config), command);
  }
  if (flags.cutoff) {
    if (command == Command::ReproduceTable) throw ConfigError("", "--cutoff does not apply to reproduce-table");
    if (*flags.cutoff < 1) throw ConfigError("", "--cutoff must be positive");
    cfg.cutoff = *flags.cutoff;
    if (cfg.optimize && cfg.optimize->search_cutoff > cfg.cutoff) cfg.optimize->search_cutoff = cfg.cutoff;
  }
  if (flags.seed) cfg.seed = *flags.seed;
  if (cfg.optimize) cfg.optimize->ga.seed = cfg.seed;
  return cfg;
}

std::string table_csv(const TableRow& row) {
  std::ostringstream os;
  write_table_csv(os, std::span<const TableRow>(&row, 1));
  return os.str();
}

void summary(const Flags& flags, const TableRow& row) {
  if (flags.quiet) return;
  std::cout << row.state << "  eps = " << std::setprecision(6) << row.eps << "  P = " << row.success_prob;
  if (row.eps_avg) std::cout << "  eps_avg = " << *row.eps_avg;
  std::cout << '\n';
}

Output run_evaluate(const ExperimentConfig& cfg, const Flags& flags) {
  const SchemeParams& p = *cfg.params;
  const Ket target = make_target(*cfg.target, cfg.cutoff);
  const ConditionalOutput out = output_closed_form(p, cfg.cutoff);
  TableRow row{describe(*cfg.target), misfit(out, target), p, success_probability(p, cfg.cutoff), std::nullopt};
  if (p.homodyne) row.eps_avg = average_misfit(p, target, cfg.n_subranges, cfg.cutoff);
  summary(flags, row);
  std::ostringstream state;
  write_state_csv(state, out.state);
  return {{{"table.csv", table_csv(row)}, {"state.csv", state.str()}}};
}

Output run_optimize(const ExperimentConfig& cfg, const Flags& flags) {
  const OptimizeSpec& o = *cfg.optimize;
  SearchOptions options{o.search_cutoff, cfg.cutoff, o.delta, cfg.n_subranges};
  OptimizationResult result = optimize(*cfg.target, cfg.measurement, o.bounds, o.fixed, o.ga, options);
  if (o.polish) {
    result = local_polish(result, make_target(*cfg.target, cfg.cutoff), o.polish_iters, o.bounds, o.fixed,
                          cfg.n_subranges);
  }
  const std::string label = describe(*cfg.target);
  const TableRow row{label, result.best_misfit, result.best_params, result.success_prob, result.eps_avg};
  summary(flags, row);
  std::ostringstream record;
  write_result_record(record, label, result);
  return {{{"table.csv", table_csv(row)}, {"result.txt", record.str()}}};
}

Output run_sweep(const ExperimentConfig& cfg, const Flags& flags) {
  const SweepSpec& s = *cfg.sweep;
  const Ket target = make_target(*cfg.target, cfg.cutoff);
  const std::vector<SweepPoint> points =
      s.kind == SweepKind::Deviation
          ? sweep_parameter_deviation(*cfg.params, target, s.values, s.sampling, s.n_samples, cfg.seed, cfg.cutoff)
          : sweep_efficiency(*cfg.params, target, s.values, s.which, cfg.cutoff);
  if (!flags.quiet) {
    for (const SweepPoint& pt : points) {
      std::cout << std::setprecision(6) << pt.value << "  mean " << pt.misfit_mean << "  max " << pt.misfit_max << '\n';
    }
  }
  std::ostringstream csv;
  write_sweep_csv(csv, points);
  return {{{"sweep.csv", csv.str()}}};
}

Output run_reproduce(const ExperimentConfig& cfg, const Flags& flags) {
  std::vector<RowReport> reports;
  bool all_pass = true;
  for (std::size_t k = 0; k < cfg.entries.size(); ++k) {
    RowReport r = reproduce_row(cfg.entries[k], cfg.policy, cfg.rows[k]);
    all_pass = all_pass && r.pass();
    if (!flags.quiet) {
      std::cout << (r.pass() ? "PASS" : "FAIL") << "  row " << r.index << "  " << r.label << "  "
                << measurement_name(r.kind) << std::setprecision(3) << "  eps " << r.eps_raw;
      if (r.eps_polished) std::cout << " -> " << *r.eps_polished;
      std::cout << " (table " << r.eps_table << ")  P " << r.prob << " (table " << r.prob_table << ")";
      if (r.eps_avg) std::cout << "  eps_avg " << *r.eps_avg;
      std::cout << '\n';
    }
    reports.push_back(std::move(r));
  }
  std::ostringstream csv;
  write_reproduce_csv(csv, reports);
  return {{{"reproduce.csv", csv.str()}}, all_pass ? kOk : kAcceptance};
}

// Every file is staged next to its destination and renamed only after all were written.
void commit(const Output& output, const std::string& dir) {
  fs::create_directories(dir);
  std::vector<std::pair<fs::path, fs::path>> staged;
  for (const auto& [name, content] : output.files) {
    const fs::path final_path = fs::path(dir) / name;
    fs::path tmp = final_path;
    tmp += ".tmp";
    std::ofstream f(tmp, std::ios::binary);
    f << content;
    if (!f.flush()) throw std::runtime_error("cannot write " + tmp.string());
    staged.emplace_back(tmp, final_path);
  }
  for (const auto& [tmp, final_path] : staged) fs::rename(tmp, final_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heralded nonclassical-state preparation from two squeezed coherent states"};
  app.require_subcommand(1);
  Flags flags;
  const auto add = [&](const std::string& name, const std::string& description) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--config", flags.config, "JSON experiment description");
    sub->add_option("--seed", flags.seed, "RNG seed (overrides the config)");
    sub->add_option("--cutoff", flags.cutoff, "Fock-space cutoff (overrides the config)");
    sub->add_option("--out", flags.out, "Output directory")->capture_default_str();
    sub->add_flag("--quiet", flags.quiet, "Suppress console output");
    return sub;
  };
  CLI::App* evaluate = add("evaluate", "Evaluate one parameter set");
  CLI::App* optimize_cmd = add("optimize", "Genetic-algorithm search for a target state");
  CLI::App* sweep = add("sweep", "Sensitivity to parameter deviations or detector efficiency");
  CLI::App* reproduce = add("reproduce-table", "Re-evaluate built-in published rows against tolerances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kValidation;
  }

  Command command = Command::Evaluate;
  if (optimize_cmd->parsed()) command = Command::Optimize;
  if (sweep->parsed()) command = Command::Sweep;
  if (reproduce->parsed()) command = Command::ReproduceTable;
  (void)evaluate;

  try {
    const ExperimentConfig cfg = load(command, flags);
    Output output;
    switch (command) {
      case Command::Evaluate: output = run_evaluate(cfg, flags); break;
      case Command::Optimize: output = run_optimize(cfg, flags); break;
      case Command::Sweep: output = run_sweep(cfg, flags); break;
      case Command::ReproduceTable: output = run_reproduce(cfg, flags); break;
    }
    commit(output, flags.out);
    return output.status;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kValidation;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  }
}
