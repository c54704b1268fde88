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
#include <vector>

#include "fockherald/scheme.hpp"

namespace fockherald {

/// Box constraints over the flat parameter vector (see kParameterNames).
/// Periodic dimensions live on [lo, hi) and wrap.
struct Bounds {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;
  std::vector<bool> periodic;

  /// 0 <= r <= 1.7, 0 <= |alpha| <= 4, 0.1 <= T <= 0.9, 0 <= x <= 4, angles in [0, 2 pi).
  static Bounds defaults(Measurement kind);

  int size() const { return static_cast<int>(lo.size()); }
  bool contains(const Eigen::VectorXd& v) const;
  /// Wraps periodic dimensions and reflects the others back inside.
  Eigen::VectorXd repair(Eigen::VectorXd v) const;
};

struct GAConfig {
  int population_size = 200;
  int generations = 500;
  int tournament_size = 4;
  double crossover_rate = 0.9;
  double mutation_sigma_fraction = 0.05;
  int elitism_count = 2;
  int restarts = 4;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument for non-positive sizes or rates outside [0, 1].
  void validate() const;
};

/// Optional pinned value per dimension; pinned dimensions are never searched.
struct FixedMask {
  std::vector<std::optional<double>> pinned;

  static FixedMask none(Measurement kind) { return {std::vector<std::optional<double>>(parameter_count(kind))}; }
  int free_count() const;
  Eigen::VectorXd apply(Eigen::VectorXd v) const;
};

struct SearchOptions {
  int search_cutoff = tol::kSearchCutoff;
  int final_cutoff = tol::kDefaultCutoff;
  /// HM window half-width. When empty, the widest window that keeps the
  /// average misfit below tol::kAverageMisfitTarget is chosen.
  std::optional<double> window_halfwidth;
  int n_subranges = tol::kAverageMisfitSubranges;
};

struct OptimizationResult {
  SchemeParams best_params;
  double best_misfit = 1;
  double success_prob = 0;
  std::optional<double> eps_avg;
  /// Input mass lost to truncation at the final cutoff.
  double truncation_loss = 0;
  /// Best-so-far misfit after each generation (search cutoff), all restarts in order.
  std::vector<double> trace;
  std::uint64_t seed = 0;
  long long evaluations = 0;
};

/// Misfit of the closed-form output against `target` (whose size fixes the cutoff).
double objective(const SchemeParams& p, const Ket& target);

OptimizationResult optimize(const TargetSpec& target, Measurement kind, const Bounds& bounds, const FixedMask& mask,
                            const GAConfig& cfg, const SearchOptions& options = {});

/// Derivative-free simplex descent over the free dimensions, restarted from
/// the incumbent until the budget is spent or no progress is made. Never
/// returns a worse point than it was given.
OptimizationResult local_polish(const OptimizationResult& start, const Ket& target, int max_iters,
                                const Bounds& bounds, const FixedMask& mask,
                                int n_subranges = tol::kAverageMisfitSubranges);

/// Widest HM window half-width in [1e-3, 2] whose average misfit stays at or below `limit`.
double select_window(const SchemeParams& p, const Ket& target, int n_subranges = tol::kAverageMisfitSubranges,
                     double limit = tol::kAverageMisfitTarget);

/// Fills success_prob, eps_avg and truncation_loss for result.best_params at the target's cutoff.
void score(OptimizationResult& result, const Ket& target, int n_subranges = tol::kAverageMisfitSubranges);

}  // namespace fockherald
