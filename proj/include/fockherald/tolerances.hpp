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

namespace fockherald::tol {

// Normalization invariant of FockVector / TwoModeState.
inline constexpr double kNormalization = 1e-12;
// Inputs to fidelity() must be normalized to this accuracy.
inline constexpr double kFidelityInput = 1e-10;
// States whose truncated mass exceeds this are rejected.
inline constexpr double kTailMassLimit = 1e-8;
// Number of top basis states summed by tail_mass().
inline constexpr int kTailWindow = 5;

inline constexpr int kDefaultCutoff = 40;
inline constexpr int kSearchCutoff = 30;

// Below this squeezing the Hermite form of the squeezed coherent state is
// 0/0-singular; the coherent-state branch or the oracle pipeline is used.
inline constexpr double kMinSqueezing = 1e-8;

// Largest |zeta| accepted by squeeze_operator_matrix.
inline constexpr double kMaxSqueezeOperator = 2.0;
// Column-norm accuracy demanded of squeeze_operator_matrix for n <= cutoff/2.
inline constexpr double kSqueezeColumnNorm = 1e-8;

inline constexpr int kGaussLegendreNodes = 64;
inline constexpr double kQuadratureAgreement = 1e-8;
inline constexpr int kAverageMisfitSubranges = 21;

// Design criterion for the homodyne acceptance window.
inline constexpr double kAverageMisfitTarget = 1e-2;

}  // namespace fockherald::tol
