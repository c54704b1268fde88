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

#include "fockherald/imperfections.hpp"

#include <algorithm>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>

namespace fockherald {
namespace {

void check_eta(double eta) {
  if (!(eta >= 0 && eta <= 1)) throw std::invalid_argument("efficiency outside [0, 1]");
}

BeamSplitterSpec<double> loss_splitter(double eta) { return {eta, BeamSplitterConvention::Symmetric}; }

Density apply_loss(const BeamSplitterUnitary<double>& bs, const Ket& v) {
  const int n_cut = cutoff_of(v);
  const TwoMode out = bs.apply(tensor(v, fock_state(0, n_cut))).state;
  return partial_trace(out, Mode::Four);
}

}  // namespace

Density loss_channel(const Ket& input, double eta) {
  check_eta(eta);
  const BeamSplitterUnitary<double> bs(loss_splitter(eta), cutoff_of(input));
  return apply_loss(bs, input);
}

Density loss_channel(const Density& input, double eta) {
  check_eta(eta);
  if (input.rows() != input.cols()) throw std::invalid_argument("loss_channel: density matrix not square");
  const BeamSplitterUnitary<double> bs(loss_splitter(eta), cutoff_of(input));
  // the channel is linear, so it acts on each eigencomponent separately
  Eigen::SelfAdjointEigenSolver<Density> eig(input);
  Density out = Density::Zero(input.rows(), input.cols());
  for (Eigen::Index i = 0; i < input.rows(); ++i) {
    const double weight = eig.eigenvalues()(i);
    if (weight == 0) continue;
    out += weight * apply_loss(bs, eig.eigenvectors().col(i));
  }
  return out;
}

std::vector<TwoMode> dilate_loss(const TwoMode& state, Mode lossy, double eta) {
  check_eta(eta);
  const int n_cut = cutoff_of(state);
  const BeamSplitterUnitary<double> bs(loss_splitter(eta), n_cut);
  // |j + k>|0>_a has amplitude U_{j+k}(j, j+k) on |j>|k>_a; block index j counts the kept photons
  const TwoMode in = lossy == Mode::Three ? state : TwoMode(state.transpose());
  std::vector<TwoMode> branches;
  branches.reserve(n_cut + 1);
  for (int k = 0; k <= n_cut; ++k) {
    TwoMode b = TwoMode::Zero(n_cut + 1, n_cut + 1);
    for (int j = 0; j + k <= n_cut; ++j) b.row(j) = bs.block(j + k)(j, j + k) * in.row(j + k);
    branches.push_back(lossy == Mode::Three ? std::move(b) : TwoMode(b.transpose()));
  }
  return branches;
}

LossyOutput conditional_output_lossy(const SchemeParams& p, const ImperfectionSpec& imp, int cutoff) {
  check_eta(imp.eta_det);
  check_eta(imp.eta_signal);
  const auto bs = post_beam_splitter_state(p, cutoff);
  Density rho = Density::Zero(cutoff + 1, cutoff + 1);
  for (const TwoMode& branch : dilate_loss(bs.state, Mode::Three, imp.eta_det)) {
    const Projection<double> proj = p.is_homodyne()
                                        ? project_quadrature(branch, Mode::Three, p.homodyne->x, p.homodyne->lambda)
                                        : project_fock(branch, Mode::Three, 1);
    if (proj.weight > 0) rho += density_from(proj.state);
  }
  const double weight = rho.trace().real();
  if (weight > 0) rho /= weight;
  if (weight > 0 && imp.eta_signal != 1) rho = loss_channel(rho, imp.eta_signal);
  return {std::move(rho), weight};
}

std::vector<SweepPoint> sweep_parameter_deviation(const SchemeParams& p, const Ket& target,
                                                  std::span<const double> rel_devs, Sampling sampling,
                                                  int n_samples, std::uint64_t seed, int cutoff) {
  if (n_samples < 1) throw std::invalid_argument("sweep_parameter_deviation: n_samples < 1");
  for (double d : rel_devs) {
    if (!(d >= 0 && d <= 0.2)) throw std::invalid_argument("sweep_parameter_deviation: deviation outside [0, 0.2]");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  std::vector<std::array<double, 8>> draws(n_samples);
  for (auto& u : draws) {
    for (double& ui : u) ui = sampling == Sampling::SignedUniform ? uniform(rng) : (coin(rng) ? 1.0 : -1.0);
  }

  const auto perturb = [](const SqueezedCoherentParams& in, const double* u, double d) {
    constexpr double two_pi = 2 * std::numbers::pi;
    return SqueezedCoherentParams{in.r * (1 + d * u[0]), in.theta + two_pi * d * u[1], in.alpha_abs * (1 + d * u[2]),
                                  in.phi + two_pi * d * u[3]};
  };

  std::vector<SweepPoint> points;
  points.reserve(rel_devs.size());
  for (double d : rel_devs) {
    SweepPoint pt{d, 0, 0, 0};
    if (d == 0) {
      // every draw is the unperturbed point
      const ConditionalOutput out = output_closed_form(p, cutoff);
      pt.misfit_mean = pt.misfit_max = misfit(out, target);
      pt.herald_weight = out.raw_weight;
      points.push_back(pt);
      continue;
    }
    for (const auto& u : draws) {
      SchemeParams q = p;
      q.in1 = perturb(p.in1, u.data(), d);
      q.in2 = perturb(p.in2, u.data() + 4, d);
      const ConditionalOutput out = output_closed_form(q, cutoff);
      const double eps = misfit(out, target);
      pt.misfit_mean += eps;
      pt.misfit_max = std::max(pt.misfit_max, eps);
      pt.herald_weight += out.raw_weight;
    }
    pt.misfit_mean /= n_samples;
    pt.herald_weight /= n_samples;
    points.push_back(pt);
  }
  // nested ranges: the envelope at d covers every draw at d' <= d
  std::vector<double> own(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) own[i] = points[i].misfit_max;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (rel_devs[j] <= rel_devs[i]) points[i].misfit_max = std::max(points[i].misfit_max, own[j]);
    }
  }
  return points;
}

std::vector<SweepPoint> sweep_efficiency(const SchemeParams& p, const Ket& target, std::span<const double> eta_grid,
                                         LossPlacement which, int cutoff) {
  std::vector<SweepPoint> points;
  points.reserve(eta_grid.size());
  for (double eta : eta_grid) {
    ImperfectionSpec imp;
    if (which != LossPlacement::Signal) imp.eta_det = eta;
    if (which != LossPlacement::Detector) imp.eta_signal = eta;
    const LossyOutput out = conditional_output_lossy(p, imp, cutoff);
    const double eps = out.herald_weight > 0 ? misfit(out.state, target) : 1.0;
    points.push_back({eta, eps, eps, out.herald_weight});
  }
  return points;
}

void write_sweep_csv(std::ostream& os, std::span<const SweepPoint> points) {
  os << "sweep_var,misfit_mean,misfit_max,herald_weight\n";
  os << std::setprecision(17);
  for (const SweepPoint& pt : points) {
    os << pt.value << ',' << pt.misfit_mean << ',' << pt.misfit_max << ',' << pt.herald_weight << '\n';
  }
}

}  // namespace fockherald
