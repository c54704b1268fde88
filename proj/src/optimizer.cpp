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

#include "fockherald/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

namespace fockherald {
namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

bool is_angle(int i) { return i == 1 || i == 3 || i == 5 || i == 7 || i == 10; }

void check_shapes(const Bounds& b, const FixedMask& mask, Measurement kind) {
  const int n = parameter_count(kind);
  if (b.size() != n || b.hi.size() != n || static_cast<int>(b.periodic.size()) != n) {
    throw std::invalid_argument("bounds do not match the measurement kind");
  }
  if (static_cast<int>(mask.pinned.size()) != n) throw std::invalid_argument("mask does not match the measurement kind");
  for (int i = 0; i < n; ++i) {
    if (!(b.lo(i) <= b.hi(i))) throw std::invalid_argument("bounds: lo > hi");
    const auto& pin = mask.pinned[i];
    if (pin && !b.periodic[i] && (*pin < b.lo(i) || *pin > b.hi(i))) {
      throw std::invalid_argument("pinned value outside bounds");
    }
  }
}

struct Individual {
  Eigen::VectorXd genes;
  double fitness = 1;
};

class Search {
 public:
  Search(const Ket& target, Measurement kind, const Bounds& bounds, const FixedMask& mask, double window)
      : target_(target), kind_(kind), bounds_(bounds), mask_(mask), window_(window) {
    for (int i = 0; i < bounds.size(); ++i) {
      if (!mask.pinned[i]) free_.push_back(i);
    }
  }

  double evaluate(const Eigen::VectorXd& v) {
    ++evaluations_;
    return objective(from_vector(v, window_), target_);
  }

  Eigen::VectorXd random_point(std::mt19937_64& rng) const {
    Eigen::VectorXd v(bounds_.size());
    for (int i = 0; i < bounds_.size(); ++i) {
      v(i) = std::uniform_real_distribution<double>(bounds_.lo(i), bounds_.hi(i))(rng);
    }
    return mask_.apply(bounds_.repair(v));
  }

  const std::vector<int>& free() const { return free_; }
  long long evaluations() const { return evaluations_; }
  const Bounds& bounds() const { return bounds_; }
  const FixedMask& mask() const { return mask_; }

 private:
  const Ket& target_;
  Measurement kind_;
  const Bounds& bounds_;
  const FixedMask& mask_;
  double window_;
  std::vector<int> free_;
  long long evaluations_ = 0;
};

const Individual& tournament(const std::vector<Individual>& pop, int size, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, pop.size() - 1);
  const Individual* best = &pop[pick(rng)];
  for (int k = 1; k < size; ++k) {
    const Individual& c = pop[pick(rng)];
    if (c.fitness < best->fitness) best = &c;
  }
  return *best;
}

// blend crossover; periodic genes blend along the shorter arc
Eigen::VectorXd blend(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const Search& s, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.5, 1.5);
  Eigen::VectorXd child = a;
  for (int i : s.free()) {
    double d = b(i) - a(i);
    if (s.bounds().periodic[i]) {
      const double range = s.bounds().hi(i) - s.bounds().lo(i);
      d -= range * std::round(d / range);
    }
    child(i) = a(i) + u(rng) * d;
  }
  return child;
}

void mutate(Eigen::VectorXd& v, double sigma_fraction, const Search& s, std::mt19937_64& rng) {
  if (s.free().empty()) return;
  const double rate = 1.0 / static_cast<double>(s.free().size());
  std::uniform_real_distribution<double> coin(0, 1);
  std::normal_distribution<double> normal(0, 1);
  for (int i : s.free()) {
    if (coin(rng) < rate) v(i) += sigma_fraction * (s.bounds().hi(i) - s.bounds().lo(i)) * normal(rng);
  }
}

std::vector<double> nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                                const std::vector<double>& steps, int max_evals, double& best_value) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> simplex(n + 1, x0);
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += steps[i];
  int evals = 0;
  for (std::size_t i = 0; i <= n; ++i) values[i] = f(simplex[i]), ++evals;
  std::vector<std::size_t> order(n + 1);
  const auto sort = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  };
  const auto along = [&](const std::vector<double>& c, const std::vector<double>& w, double t) {
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = c[i] + t * (w[i] - c[i]);
    return r;
  };
  while (evals < max_evals) {
    sort();
    const std::size_t lo = order.front(), hi = order.back(), second = order[n - 1];
    if (values[hi] - values[lo] <= 1e-16 * (1 + std::abs(values[lo]))) break;
    std::vector<double> centroid(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[order[k]][i] / double(n);
    }
    const auto xr = along(centroid, simplex[hi], -1);
    const double fr = f(xr);
    ++evals;
    if (fr < values[lo]) {
      const auto xe = along(centroid, simplex[hi], -2);
      const double fe = f(xe);
      ++evals;
      if (fe < fr) simplex[hi] = xe, values[hi] = fe;
      else simplex[hi] = xr, values[hi] = fr;
    } else if (fr < values[second]) {
      simplex[hi] = xr, values[hi] = fr;
    } else {
      const bool outside = fr < values[hi];
      const auto xc = along(centroid, outside ? xr : simplex[hi], 0.5);
      const double fc = f(xc);
      ++evals;
      if (fc < std::min(fr, values[hi])) {
        simplex[hi] = xc, values[hi] = fc;
      } else {
        for (std::size_t k = 1; k <= n; ++k) {
          auto& v = simplex[order[k]];
          v = along(simplex[lo], v, 0.5);
          values[order[k]] = f(v);
          ++evals;
        }
      }
    }
  }
  sort();
  best_value = values[order.front()];
  return simplex[order.front()];
}

}  // namespace

Bounds Bounds::defaults(Measurement kind) {
  const int n = parameter_count(kind);
  Bounds b{Eigen::VectorXd(n), Eigen::VectorXd(n), std::vector<bool>(n)};
  for (int i = 0; i < n; ++i) {
    b.periodic[i] = is_angle(i);
    b.lo(i) = 0;
    b.hi(i) = is_angle(i) ? kTwoPi : 0;
  }
  b.hi(0) = b.hi(4) = 1.7;
  b.hi(2) = b.hi(6) = 4.0;
  b.lo(8) = 0.1;
  b.hi(8) = 0.9;
  if (kind == Measurement::Homodyne) b.hi(9) = 4.0;
  return b;
}

bool Bounds::contains(const Eigen::VectorXd& v) const {
  if (v.size() != size()) return false;
  for (int i = 0; i < size(); ++i) {
    if (periodic[i]) continue;
    if (v(i) < lo(i) || v(i) > hi(i)) return false;
  }
  return true;
}

Eigen::VectorXd Bounds::repair(Eigen::VectorXd v) const {
  for (int i = 0; i < size(); ++i) {
    const double range = hi(i) - lo(i);
    if (range <= 0) {
      v(i) = lo(i);
    } else if (periodic[i]) {
      v(i) = lo(i) + std::fmod(std::fmod(v(i) - lo(i), range) + range, range);
      if (v(i) >= hi(i)) v(i) = lo(i);
    } else {
      // reflect, then clamp anything that overshoots by more than one range
      if (v(i) < lo(i)) v(i) = lo(i) + (lo(i) - v(i));
      if (v(i) > hi(i)) v(i) = hi(i) - (v(i) - hi(i));
      v(i) = std::clamp(v(i), lo(i), hi(i));
    }
  }
  return v;
}

void GAConfig::validate() const {
  if (population_size < 2) throw std::invalid_argument("ga: population_size must be at least 2");
  if (generations < 1) throw std::invalid_argument("ga: generations must be positive");
  if (tournament_size < 1) throw std::invalid_argument("ga: tournament_size must be positive");
  if (!(crossover_rate >= 0 && crossover_rate <= 1)) throw std::invalid_argument("ga: crossover_rate outside [0, 1]");
  if (!(mutation_sigma_fraction >= 0)) throw std::invalid_argument("ga: negative mutation_sigma_fraction");
  if (elitism_count < 0 || elitism_count >= population_size) {
    throw std::invalid_argument("ga: elitism_count must be in [0, population_size)");
  }
  if (restarts < 1) throw std::invalid_argument("ga: restarts must be positive");
}

int FixedMask::free_count() const {
  return static_cast<int>(std::count_if(pinned.begin(), pinned.end(), [](const auto& p) { return !p; }));
}

Eigen::VectorXd FixedMask::apply(Eigen::VectorXd v) const {
  for (std::size_t i = 0; i < pinned.size(); ++i) {
    if (pinned[i]) v(static_cast<Eigen::Index>(i)) = *pinned[i];
  }
  return v;
}

double objective(const SchemeParams& p, const Ket& target) {
  return misfit(output_closed_form(p, cutoff_of(target), TailPolicy::Report), target);
}

double select_window(const SchemeParams& p, const Ket& target, int n_subranges, double limit) {
  if (!p.homodyne) throw std::invalid_argument("select_window: SPD parameters");
  const int cutoff = cutoff_of(target);
  const auto eps = [&](double w) {
    SchemeParams q = p;
    q.homodyne->window_halfwidth = w;
    return average_misfit(q, target, n_subranges, cutoff, TailPolicy::Report);
  };
  double lo = 1e-3, hi = 2.0;
  if (eps(hi) <= limit) return hi;
  if (eps(lo) > limit) return lo;
  for (int it = 0; it < 30 && hi - lo > 1e-4; ++it) {
    const double mid = (lo + hi) / 2;
    (eps(mid) <= limit ? lo : hi) = mid;
  }
  return lo;
}

void score(OptimizationResult& result, const Ket& target, int n_subranges) {
  const int cutoff = cutoff_of(target);
  const SchemeParams& p = result.best_params;
  const ConditionalOutput out = output_closed_form(p, cutoff, TailPolicy::Report);
  result.best_misfit = misfit(out, target);
  result.truncation_loss = out.truncation_loss;
  result.success_prob = success_probability(p, cutoff, TailPolicy::Report);
  result.eps_avg.reset();
  if (p.homodyne && p.homodyne->window_halfwidth > 0) {
    result.eps_avg = average_misfit(p, target, n_subranges, cutoff, TailPolicy::Report);
  }
}

OptimizationResult optimize(const TargetSpec& target, Measurement kind, const Bounds& bounds, const FixedMask& mask,
                            const GAConfig& cfg, const SearchOptions& options) {
  cfg.validate();
  check_shapes(bounds, mask, kind);
  if (options.final_cutoff < options.search_cutoff) throw std::invalid_argument("final cutoff below search cutoff");
  if (options.window_halfwidth && *options.window_halfwidth < 0) throw std::invalid_argument("negative window");
  const Ket search_target = make_target(target, options.search_cutoff);
  const Ket final_target = make_target(target, options.final_cutoff);

  Search search(search_target, kind, bounds, mask, options.window_halfwidth.value_or(0));
  OptimizationResult result;
  result.seed = cfg.seed;
  std::mt19937_64 init_rng(cfg.seed);
  Individual best{search.random_point(init_rng), 2};

  for (int restart = 0; restart < cfg.restarts; ++restart) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(restart)};
    std::mt19937_64 rng(seq);
    std::vector<Individual> pop(cfg.population_size);
    for (auto& ind : pop) {
      ind.genes = search.random_point(rng);
      ind.fitness = search.evaluate(ind.genes);
    }
    const auto by_fitness = [](const Individual& a, const Individual& b) { return a.fitness < b.fitness; };
    for (int gen = 0; gen < cfg.generations; ++gen) {
      std::stable_sort(pop.begin(), pop.end(), by_fitness);
      if (pop.front().fitness < best.fitness) best = pop.front();
      result.trace.push_back(best.fitness);
      if (gen + 1 == cfg.generations) break;

      std::vector<Individual> next(pop.begin(), pop.begin() + cfg.elitism_count);
      std::uniform_real_distribution<double> coin(0, 1);
      while (static_cast<int>(next.size()) < cfg.population_size) {
        const Individual& a = tournament(pop, cfg.tournament_size, rng);
        const Individual& b = tournament(pop, cfg.tournament_size, rng);
        Eigen::VectorXd child = coin(rng) < cfg.crossover_rate ? blend(a.genes, b.genes, search, rng) : a.genes;
        mutate(child, cfg.mutation_sigma_fraction, search, rng);
        child = mask.apply(bounds.repair(child));
        next.push_back({child, search.evaluate(child)});
      }
      pop = std::move(next);
    }
  }

  double window = options.window_halfwidth.value_or(0);
  result.best_params = from_vector(best.genes, window);
  if (kind == Measurement::Homodyne && !options.window_halfwidth) {
    window = select_window(result.best_params, final_target, options.n_subranges);
    result.best_params.homodyne->window_halfwidth = window;
  }
  score(result, final_target, options.n_subranges);
  result.evaluations = search.evaluations();
  return result;
}

OptimizationResult local_polish(const OptimizationResult& start, const Ket& target, int max_iters,
                                const Bounds& bounds, const FixedMask& mask, int n_subranges) {
  const Measurement kind = measurement_of(start.best_params);
  check_shapes(bounds, mask, kind);
  if (max_iters < 0) throw std::invalid_argument("polish: negative iteration budget");
  const double window = start.best_params.homodyne ? start.best_params.homodyne->window_halfwidth : 0;
  const Eigen::VectorXd origin = to_vector(start.best_params);
  std::vector<int> free;
  for (int i = 0; i < bounds.size(); ++i) {
    if (!mask.pinned[i]) free.push_back(i);
  }

  const auto embed = [&](const std::vector<double>& y) {
    Eigen::VectorXd v = origin;
    for (std::size_t k = 0; k < free.size(); ++k) v(free[k]) = y[k];
    return mask.apply(bounds.repair(v));
  };
  long long evaluations = 0;
  const auto f = [&](const std::vector<double>& y) {
    ++evaluations;
    return objective(from_vector(embed(y), window), target);
  };

  std::vector<double> y(free.size());
  for (std::size_t k = 0; k < free.size(); ++k) y[k] = origin(free[k]);
  double best = objective(start.best_params, target);
  ++evaluations;
  const double initial = best;
  std::vector<double> best_y = y;

  // restart the simplex around the incumbent with shrinking steps
  double scale = 0.02;
  while (!free.empty() && evaluations < max_iters && scale > 1e-7) {
    std::vector<double> steps(free.size());
    for (std::size_t k = 0; k < free.size(); ++k) steps[k] = scale * (bounds.hi(free[k]) - bounds.lo(free[k]));
    double value = best;
    const long long budget = max_iters - evaluations;
    auto candidate = nelder_mead(f, best_y, steps, static_cast<int>(budget), value);
    if (value < best * (1 - 1e-6)) {
      best = value;
      best_y = candidate;
    } else {
      scale /= 4;
    }
  }

  OptimizationResult result = start;
  result.evaluations += evaluations;
  if (best < initial) {
    result.best_params = from_vector(embed(best_y), window);
    score(result, target, n_subranges);
    if (result.best_misfit > initial) return start;  // guard against rounding in the rescored value
  } else {
    score(result, target, n_subranges);
  }
  return result;
}

}  // namespace fockherald
