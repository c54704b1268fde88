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

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fockherald/fock.hpp"

namespace fockherald {

/// One input of the scheme, |zeta, alpha> = D(alpha) S(zeta) |0> with
/// zeta = r e^{i theta} and alpha = alpha_abs e^{i phi}.
struct SqueezedCoherentParams {
  double r = 0;
  double theta = 0;
  double alpha_abs = 0;
  double phi = 0;

  Complex zeta() const { return std::polar(r, theta); }
  Complex alpha() const { return std::polar(alpha_abs, phi); }
  /// alpha cosh r + alpha^* e^{i theta} sinh r
  Complex beta() const;

  bool operator==(const SqueezedCoherentParams&) const = default;
};

/// Number-basis expansion of |zeta, alpha> truncated at `cutoff`, without
/// renormalization. Exact coefficients: the missing mass is 1 - squaredNorm().
Ket squeezed_coherent_amplitudes(const SqueezedCoherentParams& p, int cutoff);

/// Normalized |zeta, alpha>. Throws CutoffError if the truncation drops more
/// than tol::kTailMassLimit.
Ket squeezed_coherent(const SqueezedCoherentParams& p, int cutoff);

Ket binomial_state(double p, int M, int cutoff);
Ket negative_binomial_state(double eta_nb, int M, double varphi, int cutoff);
Ket amplitude_squeezed_state(double alpha0, double u, double delta_as, int cutoff);

/// <m|S(zeta)|n> for m, n <= cutoff, S(zeta) = exp((zeta^* a^2 - zeta a^dag^2) / 2).
///
/// Elements come from the normal-ordered disentangling of S, so each one is
/// exact irrespective of the cutoff; only columns near the cutoff lose norm.
/// Throws std::invalid_argument for |zeta| > tol::kMaxSqueezeOperator and
/// CutoffError when even the squeezed-vacuum column is truncated.
Operator squeeze_operator_matrix(Complex zeta, int cutoff);

/// S(zeta) (|0> + chi' 3/(2 sqrt 2) |1> + chi' sqrt(3)/2 |3>), normalized.
Ket resource_state(Complex zeta, Complex chi_prime, int cutoff);

Ket adhoc_superposition(std::span<const Complex> coeffs, int cutoff);

// ---------------------------------------------------------------------------
// Target families

struct BinomialTarget {
  double p;
  int M;
};
struct NegativeBinomialTarget {
  double eta_nb;
  int M;
  double varphi;
};
struct AmplitudeSqueezedTarget {
  double alpha0;
  double u;
  double delta_as;
};
struct ResourceTarget {
  Complex zeta;
  Complex chi_prime;
};
struct AdHocTarget {
  std::vector<Complex> coefficients;
};

using TargetSpec =
    std::variant<BinomialTarget, NegativeBinomialTarget, AmplitudeSqueezedTarget, ResourceTarget, AdHocTarget>;

Ket make_target(const TargetSpec& spec, int cutoff);

/// Short human-readable label, e.g. "|0.3,7>_B".
std::string describe(const TargetSpec& spec);

}  // namespace fockherald
