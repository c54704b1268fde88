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

// Optical loss and detector inefficiency, each modeled as a beam splitter of
// transmittance eta that mixes the beam with vacuum, followed by discarding
// the reflected port.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "fockherald/scheme.hpp"

namespace fockherald {

struct ImperfectionSpec {
  /// Transmission of the measured path (detector efficiency).
  double eta_det = 1;
  /// Transmission of the heralded output path.
  double eta_signal = 1;
};

Density loss_channel(const Ket& input, double eta);
Density loss_channel(const Density& input, double eta);

/// Branches |psi_k> of a two-mode state after mode `lossy` leaked k photons
/// into a vacuum ancilla: |Psi> |0>_a -> sum_k |psi_k> |k>_a.
std::vector<TwoMode> dilate_loss(const TwoMode& state, Mode lossy, double eta);

struct LossyOutput {
  /// Normalized heralded state of mode 4.
  Density state;
  /// Herald probability (SPD) or probability density at x (HM).
  double herald_weight = 0;
};

LossyOutput conditional_output_lossy(const SchemeParams& p, const ImperfectionSpec& imp, int cutoff);

enum class Sampling { SignedUniform, WorstCase };
enum class LossPlacement { Detector, Signal, Both };

struct SweepPoint {
  double value = 0;
  double misfit_mean = 0;
  double misfit_max = 0;
  double herald_weight = 0;
};

/// Misfit versus relative deviation d of the eight input-state parameters.
///
/// Magnitudes (r, |alpha|) are scaled by 1 + d u and angles shifted by
/// 2 pi d u, with u in [-1, 1] (SignedUniform) or u = +-1 (WorstCase). The
/// same u draws are reused for every d, and misfit_max at d is taken over the
/// draws at every grid value <= d, so it is non-decreasing along the grid.
/// misfit_mean and herald_weight average the draws at d alone.
std::vector<SweepPoint> sweep_parameter_deviation(const SchemeParams& p, const Ket& target,
                                                  std::span<const double> rel_devs, Sampling sampling,
                                                  int n_samples, std::uint64_t seed, int cutoff);

/// Misfit of the lossy conditional output along an efficiency grid.
std::vector<SweepPoint> sweep_efficiency(const SchemeParams& p, const Ket& target, std::span<const double> eta_grid,
                                         LossPlacement which, int cutoff);

/// CSV with header sweep_var,misfit_mean,misfit_max,herald_weight.
void write_sweep_csv(std::ostream& os, std::span<const SweepPoint> points);

}  // namespace fockherald
