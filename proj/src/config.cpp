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

#include "fockherald/config.hpp"

#include <algorithm>
#include <initializer_list>
#include <json.hpp>
#include <set>
#include <string_view>

namespace fockherald {
namespace {

using nlohmann::json;

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

// Read-only view of a JSON object that remembers its path and which keys were consumed.
class Obj {
 public:
  Obj(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j.is_object()) throw ConfigError(path_, "expected an object");
  }

  void only(std::initializer_list<std::string_view> allowed) const {
    for (const auto& [key, value] : j_.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        throw ConfigError(join(path_, key), "unknown key");
      }
    }
  }

  bool has(std::string_view key) const { return j_.contains(key); }
  const json& at(std::string_view key) const {
    if (!has(key)) throw ConfigError(join(path_, key), "missing required key");
    return j_.at(std::string(key));
  }
  std::string path(std::string_view key) const { return join(path_, key); }
  const std::string& where() const { return path_; }

  double number(std::string_view key) const {
    const json& v = at(key);
    if (!v.is_number()) throw ConfigError(path(key), "expected a number");
    return v.get<double>();
  }
  double number(std::string_view key, double fallback) const { return has(key) ? number(key) : fallback; }

  long long integer(std::string_view key) const {
    const json& v = at(key);
    if (!v.is_number_integer()) throw ConfigError(path(key), "expected an integer");
    return v.get<long long>();
  }
  int positive(std::string_view key, int fallback) const {
    if (!has(key)) return fallback;
    const long long v = integer(key);
    if (v < 1 || v > 1'000'000'000) throw ConfigError(path(key), "expected a positive integer");
    return static_cast<int>(v);
  }

  bool boolean(std::string_view key, bool fallback) const {
    if (!has(key)) return fallback;
    const json& v = at(key);
    if (!v.is_boolean()) throw ConfigError(path(key), "expected true or false");
    return v.get<bool>();
  }

  std::string string(std::string_view key) const {
    const json& v = at(key);
    if (!v.is_string()) throw ConfigError(path(key), "expected a string");
    return v.get<std::string>();
  }

  Obj object(std::string_view key) const { return Obj(at(key), path(key)); }

 private:
  const json& j_;
  std::string path_;
};

Complex complex_value(const json& v, const std::string& path) {
  if (v.is_number()) return {v.get<double>(), 0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ConfigError(path, "expected a number or a [re, im] pair");
}

TargetSpec parse_target(const Obj& t) {
  const std::string family = t.string("family");
  if (family == "binomial") {
    t.only({"family", "p", "M"});
    return BinomialTarget{t.number("p"), static_cast<int>(t.integer("M"))};
  }
  if (family == "negative_binomial") {
    t.only({"family", "eta", "M", "varphi"});
    return NegativeBinomialTarget{t.number("eta"), static_cast<int>(t.integer("M")), t.number("varphi", 0)};
  }
  if (family == "amplitude_squeezed") {
    t.only({"family", "alpha0", "u", "delta"});
    return AmplitudeSqueezedTarget{t.number("alpha0"), t.number("u"), t.number("delta")};
  }
  if (family == "resource") {
    t.only({"family", "zeta", "chi_prime"});
    return ResourceTarget{complex_value(t.at("zeta"), t.path("zeta")),
                          complex_value(t.at("chi_prime"), t.path("chi_prime"))};
  }
  if (family == "adhoc") {
    t.only({"family", "coefficients"});
    const json& c = t.at("coefficients");
    if (!c.is_array() || c.empty()) throw ConfigError(t.path("coefficients"), "expected a non-empty array");
    AdHocTarget a;
    for (std::size_t i = 0; i < c.size(); ++i) {
      a.coefficients.push_back(complex_value(c[i], t.path("coefficients") + "[" + std::to_string(i) + "]"));
    }
    return a;
  }
  throw ConfigError(t.path("family"),
                    "unknown family '" + family +
                        "' (binomial, negative_binomial, amplitude_squeezed, resource, adhoc)");
}

Measurement parse_measurement(const Obj& root) {
  const std::string m = root.string("measurement");
  if (m == "spd") return Measurement::Spd;
  if (m == "hm") return Measurement::Homodyne;
  throw ConfigError(root.path("measurement"), "expected \"spd\" or \"hm\"");
}

int parameter_index(std::string_view name, Measurement kind, const std::string& path) {
  for (int i = 0; i < parameter_count(kind); ++i) {
    if (kParameterNames[i] == name) return i;
  }
  throw ConfigError(path, kind == Measurement::Spd && (name == "x" || name == "lambda")
                              ? "not a parameter of the spd scheme"
                              : "unknown parameter");
}

SchemeParams parse_params(const Obj& p, Measurement kind, bool need_delta) {
  Eigen::VectorXd v(parameter_count(kind));
  for (int i = 0; i < v.size(); ++i) v(i) = p.number(kParameterNames[i]);
  if (kind == Measurement::Homodyne) {
    p.only({"r1", "theta1", "alpha1", "phi1", "r2", "theta2", "alpha2", "phi2", "T", "x", "lambda", "delta"});
  } else {
    p.only({"r1", "theta1", "alpha1", "phi1", "r2", "theta2", "alpha2", "phi2", "T"});
  }
  double delta = 0;
  if (kind == Measurement::Homodyne) {
    if (need_delta || p.has("delta")) {
      delta = p.number("delta");
      if (!(delta > 0)) throw ConfigError(p.path("delta"), "window half-width must be positive");
    }
  }
  for (int i : {0, 2, 4, 6}) {
    if (v(i) < 0) throw ConfigError(p.path(kParameterNames[i]), "must be non-negative");
  }
  if (!(v(8) >= 0 && v(8) <= 1)) throw ConfigError(p.path("T"), "must lie in [0, 1]");
  return from_vector(v, delta);
}

GAConfig parse_ga(const Obj& g) {
  g.only({"population_size", "generations", "tournament_size", "crossover_rate", "mutation_sigma_fraction",
          "elitism_count", "restarts"});
  GAConfig c;
  c.population_size = g.positive("population_size", c.population_size);
  c.generations = g.positive("generations", c.generations);
  c.tournament_size = g.positive("tournament_size", c.tournament_size);
  c.crossover_rate = g.number("crossover_rate", c.crossover_rate);
  c.mutation_sigma_fraction = g.number("mutation_sigma_fraction", c.mutation_sigma_fraction);
  if (g.has("elitism_count")) {
    const long long e = g.integer("elitism_count");
    if (e < 0) throw ConfigError(g.path("elitism_count"), "must be non-negative");
    c.elitism_count = static_cast<int>(std::min<long long>(e, 1'000'000'000));
  }
  c.restarts = g.positive("restarts", c.restarts);
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(g.where(), e.what());
  }
  return c;
}

OptimizeSpec parse_optimize(const Obj& o, Measurement kind, int cutoff) {
  o.only({"search_cutoff", "ga", "bounds", "fixed", "polish", "polish_iters", "delta"});
  OptimizeSpec s;
  s.search_cutoff = o.positive("search_cutoff", std::min(s.search_cutoff, cutoff));
  if (s.search_cutoff > cutoff) throw ConfigError(o.path("search_cutoff"), "must not exceed cutoff");
  if (o.has("ga")) s.ga = parse_ga(o.object("ga"));
  s.bounds = Bounds::defaults(kind);
  if (o.has("bounds")) {
    const Obj b = o.object("bounds");
    for (const auto& [key, value] : o.at("bounds").items()) {
      const int i = parameter_index(key, kind, b.path(key));
      if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number()) {
        throw ConfigError(b.path(key), "expected [lo, hi]");
      }
      s.bounds.lo(i) = value[0].get<double>();
      s.bounds.hi(i) = value[1].get<double>();
      if (!(s.bounds.lo(i) <= s.bounds.hi(i))) throw ConfigError(b.path(key), "lo exceeds hi");
    }
  }
  s.fixed = FixedMask::none(kind);
  if (o.has("fixed")) {
    const Obj f = o.object("fixed");
    for (const auto& [key, value] : o.at("fixed").items()) {
      const int i = parameter_index(key, kind, f.path(key));
      if (!value.is_number()) throw ConfigError(f.path(key), "expected a number");
      const double v = value.get<double>();
      if (!s.bounds.periodic[i] && (v < s.bounds.lo(i) || v > s.bounds.hi(i))) {
        throw ConfigError(f.path(key), "pinned value outside bounds");
      }
      s.fixed.pinned[i] = v;
    }
  }
  s.polish = o.boolean("polish", s.polish);
  s.polish_iters = o.positive("polish_iters", s.polish_iters);
  if (o.has("delta")) {
    if (kind != Measurement::Homodyne) throw ConfigError(o.path("delta"), "only applies to hm");
    s.delta = o.number("delta");
    if (!(*s.delta > 0)) throw ConfigError(o.path("delta"), "window half-width must be positive");
  }
  return s;
}

SweepSpec parse_sweep(const Obj& s) {
  s.only({"kind", "values", "sampling", "n_samples", "which"});
  SweepSpec spec;
  const std::string kind = s.string("kind");
  if (kind == "deviation") {
    spec.kind = SweepKind::Deviation;
  } else if (kind == "efficiency") {
    spec.kind = SweepKind::Efficiency;
  } else {
    throw ConfigError(s.path("kind"), "expected \"deviation\" or \"efficiency\"");
  }
  const json& values = s.at("values");
  if (!values.is_array()) throw ConfigError(s.path("values"), "expected an array of numbers");
  const double hi = spec.kind == SweepKind::Deviation ? 0.2 : 1.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::string path = s.path("values") + "[" + std::to_string(i) + "]";
    if (!values[i].is_number()) throw ConfigError(path, "expected a number");
    const double v = values[i].get<double>();
    if (!(v >= 0 && v <= hi)) throw ConfigError(path, "must lie in [0, " + std::string(hi == 1 ? "1" : "0.2") + "]");
    spec.values.push_back(v);
  }
  if (spec.kind == SweepKind::Deviation) {
    if (s.has("which")) throw ConfigError(s.path("which"), "only applies to efficiency sweeps");
    if (s.has("sampling")) {
      const std::string m = s.string("sampling");
      if (m == "signed_uniform") {
        spec.sampling = Sampling::SignedUniform;
      } else if (m == "worst_case") {
        spec.sampling = Sampling::WorstCase;
      } else {
        throw ConfigError(s.path("sampling"), "expected \"signed_uniform\" or \"worst_case\"");
      }
    }
    spec.n_samples = s.positive("n_samples", spec.n_samples);
  } else {
    if (s.has("sampling")) throw ConfigError(s.path("sampling"), "only applies to deviation sweeps");
    if (s.has("n_samples")) throw ConfigError(s.path("n_samples"), "only applies to deviation sweeps");
    if (s.has("which")) {
      const std::string w = s.string("which");
      if (w == "det") {
        spec.which = LossPlacement::Detector;
      } else if (w == "signal") {
        spec.which = LossPlacement::Signal;
      } else if (w == "both") {
        spec.which = LossPlacement::Both;
      } else {
        throw ConfigError(s.path("which"), "expected \"det\", \"signal\" or \"both\"");
      }
    }
  }
  return spec;
}

void add_row(ExperimentConfig& cfg, const json& item, const std::string& path) {
  const auto& table = reference_table();
  const auto index_of = [&](const json& v, const std::string& p) {
    if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() >= static_cast<long long>(table.size())) {
      throw ConfigError(p, "expected a row number in [0, " + std::to_string(table.size() - 1) + "]");
    }
    return static_cast<int>(v.get<long long>());
  };
  if (!item.is_object()) {
    const int i = index_of(item, path);
    cfg.rows.push_back(i);
    cfg.entries.push_back(table[i]);
    return;
  }
  const Obj o(item, path);
  o.only({"row", "override"});
  const int i = index_of(o.at("row"), o.path("row"));
  TableEntry entry = table[i];
  if (o.has("override")) {
    const Obj ov = o.object("override");
    Eigen::VectorXd v = to_vector(entry.params);
    double delta = entry.params.homodyne ? entry.params.homodyne->window_halfwidth : 0;
    for (const auto& [key, value] : o.at("override").items()) {
      if (!value.is_number()) throw ConfigError(ov.path(key), "expected a number");
      if (key == "delta" && entry.params.homodyne) {
        delta = value.get<double>();
      } else {
        v(parameter_index(key, entry.kind(), ov.path(key))) = value.get<double>();
      }
    }
    entry.params = from_vector(v, delta);
  }
  cfg.rows.push_back(i);
  cfg.entries.push_back(std::move(entry));
}

void parse_rows(ExperimentConfig& cfg, const Obj& root) {
  const json& rows = root.at("rows");
  if (rows.is_string()) {
    const std::string which = rows.get<std::string>();
    std::vector<int> picked;
    if (which == "designated") {
      picked = designated_rows();
    } else if (which == "all") {
      for (int i = 0; i < static_cast<int>(reference_table().size()); ++i) picked.push_back(i);
    } else {
      throw ConfigError(root.path("rows"), "expected \"designated\", \"all\" or an array");
    }
    for (int i : picked) add_row(cfg, json(i), root.path("rows"));
    return;
  }
  if (!rows.is_array()) throw ConfigError(root.path("rows"), "expected \"designated\", \"all\" or an array");
  for (std::size_t k = 0; k < rows.size(); ++k) add_row(cfg, rows[k], root.path("rows") + "[" + std::to_string(k) + "]");
}

}  // namespace

ExperimentConfig default_reproduce_config() {
  ExperimentConfig cfg;
  cfg.command = Command::ReproduceTable;
  for (int i : designated_rows()) {
    cfg.rows.push_back(i);
    cfg.entries.push_back(reference_table()[i]);
  }
  return cfg;
}

ExperimentConfig parse_config(const std::string& text, Command command) {
  json j;
  try {
    j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError("", e.what());
  }
  const Obj root(j, "");
  ExperimentConfig cfg;
  cfg.command = command;

  if (command == Command::ReproduceTable) {
    root.only({"rows", "polish", "polish_iters"});
    if (root.has("rows")) {
      parse_rows(cfg, root);
    } else {
      cfg = default_reproduce_config();
    }
    cfg.policy.polish = root.boolean("polish", cfg.policy.polish);
    cfg.policy.polish_iters = root.positive("polish_iters", cfg.policy.polish_iters);
    return cfg;
  }

  switch (command) {
    case Command::Evaluate:
      root.only({"target", "measurement", "cutoff", "seed", "params", "n_subranges"});
      break;
    case Command::Optimize:
      root.only({"target", "measurement", "cutoff", "seed", "n_subranges", "optimize"});
      break;
    case Command::Sweep:
      root.only({"target", "measurement", "cutoff", "seed", "params", "n_subranges", "sweep"});
      break;
    case Command::ReproduceTable:
      break;
  }
  cfg.measurement = parse_measurement(root);
  cfg.target = parse_target(root.object("target"));
  cfg.cutoff = root.positive("cutoff", cfg.cutoff);
  if (root.has("seed")) {
    const json& s = root.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
      throw ConfigError(root.path("seed"), "expected a non-negative integer");
    }
    cfg.seed = s.get<std::uint64_t>();
  }
  cfg.n_subranges = root.positive("n_subranges", cfg.n_subranges);
  if (command == Command::Evaluate || command == Command::Sweep) {
    cfg.params = parse_params(root.object("params"), cfg.measurement, command == Command::Evaluate);
  }
  if (command == Command::Optimize) {
    static const json empty = json::object();
    const Obj o = root.has("optimize") ? root.object("optimize") : Obj(empty, "optimize");
    cfg.optimize = parse_optimize(o, cfg.measurement, cfg.cutoff);
  }
  if (command == Command::Sweep) cfg.sweep = parse_sweep(root.object("sweep"));
  return cfg;
}

}  // namespace fockherald
