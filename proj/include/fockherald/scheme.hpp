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

// Conditional preparation with two squeezed coherent inputs on a beam
// splitter, heralded by single-photon detection (SPD) or a homodyne
// measurement (HM) on mode 3. Mode 4 carries the prepared state.

#include <array>
#include <optional>
#include <string_view>

#include "fockherald/fock.hpp"
#include "fockherald/states.hpp"

namespace fockherald {

struct Homodyne {
  double x = 0;
  double lambda = 0;
  /// Half-width of the accepted window [x - w, x + w].
  double window_halfwidth = 0;

  bool operator==(const Homodyne&) const = default;
};

struct SchemeParams {
  SqueezedCoherentParams in1;
  SqueezedCoherentParams in2;
  double transmittance = 0.5;
  /// Empty for single-photon detection.
  std::optional<Homodyne> homodyne;

  bool is_homodyne() const { return homodyne.has_value(); }
  bool operator==(const SchemeParams&) const = default;
};

enum class Measurement { Spd, Homodyne };

inline Measurement measurement_of(const SchemeParams& p) {
  return p.is_homodyne() ? Measurement::Homodyne : Measurement::Spd;
}

/// Flat parameter order used by the optimizer and the CLI. HM adds x, lambda.
inline constexpr std::array<std::string_view, 11> kParameterNames = {
    "r1", "theta1", "alpha1", "phi1", "r2", "theta2", "alpha2", "phi2", "T", "x", "lambda"};

inline int parameter_count(Measurement kind) { return kind == Measurement::Homodyne ? 11 : 9; }

Eigen::VectorXd to_vector(const SchemeParams& p);
/// Inverse of to_vector. A size-11 vector yields HM parameters with the given window.
SchemeParams from_vector(const Eigen::VectorXd& v, double window_halfwidth = 0);

struct ConditionalOutput {
  /// Normalized heralded state of mode 4 (zero vector when raw_weight == 0).
  Ket state;
  /// Squared norm before normalization: probability (SPD) or probability density at x (HM).
  double raw_weight = 0;
  /// Input mass outside the retained space n + m <= cutoff.
  double truncation_loss = 0;
};

enum class TailPolicy { Throw, Report };

struct OracleOptions {
  Mode measured = Mode::Three;
  BeamSplitterConvention convention = BeamSplitterConvention::Symmetric;
  TailPolicy tail = TailPolicy::Throw;
};

/// Closed-form photon-number expansion of the SPD-heralded state.
/// Requires r1, r2 >= tol::kMinSqueezing.
ConditionalOutput output_spd_closed_form(const SchemeParams& p, int cutoff, TailPolicy tail = TailPolicy::Throw);

/// Closed-form photon-number expansion of the HM-heralded state at x.
/// Requires r1, r2 >= tol::kMinSqueezing.
ConditionalOutput output_hm_closed_form(const SchemeParams& p, int cutoff, TailPolicy tail = TailPolicy::Throw);

/// Closed form when it is defined, the oracle pipeline below the squeezing threshold.
ConditionalOutput output_closed_form(const SchemeParams& p, int cutoff, TailPolicy tail = TailPolicy::Throw);

/// First-principles pipeline: inputs -> tensor -> beam splitter -> projection.
ConditionalOutput output_oracle(const SchemeParams& p, int cutoff, const OracleOptions& options = {});

/// Two-mode state right after the beam splitter, plus the input mass dropped by truncation.
BeamSplitterResult<double> post_beam_splitter_state(const SchemeParams& p, int cutoff,
                                                    const OracleOptions& options = {});

double misfit(const Ket& out, const Ket& target);
double misfit(const ConditionalOutput& out, const Ket& target);
double misfit(const Density& out, const Ket& target);

double success_prob_spd(const SchemeParams& p, int cutoff, TailPolicy tail = TailPolicy::Throw);

/// Quadrature-outcome distribution of mode 3, for fixed scheme parameters.
class HomodyneMarginal {
 public:
  HomodyneMarginal(const SchemeParams& p, int cutoff, TailPolicy tail = TailPolicy::Throw);

  double density(double x) const;
  Projection<double> project(double x) const;
  /// Probability of an outcome in [a, b]; adaptive Gauss-Legendre with
  /// node-doubling error control. Throws NumericError on non-convergence.
  double probability(double a, double b) const;

 private:
  TwoMode state_;
  double lambda_;
};

/// Probability that the homodyne outcome lands in [x - w, x + w].
double success_prob_hm(const SchemeParams& p, int cutoff, TailPolicy tail = TailPolicy::Throw);

/// Probability-weighted misfit over n_subranges equal slices of the window.
double average_misfit(const SchemeParams& p, const Ket& target, int n_subranges = tol::kAverageMisfitSubranges,
                      int cutoff = tol::kDefaultCutoff, TailPolicy tail = TailPolicy::Throw);

/// Herald probability for SPD, window probability for HM.
double success_probability(const SchemeParams& p, int cutoff, TailPolicy tail = TailPolicy::Throw);

}  // namespace fockherald
