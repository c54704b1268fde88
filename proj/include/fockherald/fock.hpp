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

// Truncated Fock-space linear algebra for one and two bosonic modes.
//
// A single-mode pure state is a complex column vector over |0>..|N>, where
// N = size - 1 is the cutoff. A two-mode state is a complex matrix whose entry
// (n, m) is the amplitude of |n>_3 |m>_4; the first index is the mode labelled
// 3 (the measured port of the preparation scheme), the second is mode 4.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fockherald/errors.hpp"
#include "fockherald/tolerances.hpp"

namespace fockherald {

template <typename Real>
using KetT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using OperatorT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using TwoModeT = OperatorT<Real>;
template <typename Real>
using DensityT = OperatorT<Real>;

using Complex = std::complex<double>;
using Ket = KetT<double>;
using Operator = OperatorT<double>;
using TwoMode = TwoModeT<double>;
using Density = DensityT<double>;

enum class Mode { Three = 3, Four = 4 };

template <typename Derived>
int cutoff_of(const Eigen::EigenBase<Derived>& v) {
  return static_cast<int>(v.rows()) - 1;
}

template <typename Real = double>
KetT<Real> fock_state(int n, int cutoff) {
  if (n < 0 || n > cutoff) throw std::invalid_argument("fock_state: n outside [0, cutoff]");
  KetT<Real> v = KetT<Real>::Zero(cutoff + 1);
  v(n) = Real(1);
  return v;
}

template <typename Derived>
typename Derived::PlainObject normalized(const Eigen::MatrixBase<Derived>& v) {
  const auto norm = v.norm();
  if (!(norm > 0)) throw std::invalid_argument("normalized: zero vector");
  return v / norm;
}

template <typename Derived>
bool is_normalized(const Eigen::MatrixBase<Derived>& v,
                   typename Derived::RealScalar tolerance = tol::kNormalization) {
  return std::abs(v.squaredNorm() - 1) <= tolerance;
}

/// Mass held by the top `window` basis states |N-window+1>..|N>.
template <typename Derived>
typename Derived::RealScalar tail_mass(const Eigen::MatrixBase<Derived>& v,
                                       int window = tol::kTailWindow) {
  const Eigen::Index n = v.size();
  const Eigen::Index w = std::min<Eigen::Index>(window, n);
  return v.tail(w).squaredNorm();
}

namespace detail {

template <typename Scalar>
bool finite(const Scalar& z) {
  if constexpr (requires { z.imag(); }) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  } else {
    return std::isfinite(z);
  }
}

}  // namespace detail

/// Physicists' Hermite polynomials H_0(z)..H_{n_max}(z) by the three-term
/// recurrence. Works for real and complex arguments.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> hermite_sequence(Scalar z, int n_max) {
  if (n_max < 0) throw std::invalid_argument("hermite_sequence: n_max < 0");
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> h(n_max + 1);
  h(0) = Scalar(1);
  if (n_max >= 1) h(1) = Scalar(2) * z;
  for (int k = 1; k < n_max; ++k) {
    h(k + 1) = Scalar(2) * z * h(k) - Scalar(2 * k) * h(k - 1);
    if (!detail::finite(h(k + 1))) throw OverflowError(k + 1);
  }
  return h;
}

/// <x|n>_lambda for n = 0..n_max, with X_lambda = (a e^{-i lambda} + a^dag e^{i lambda}) / sqrt(2).
///
/// Uses the recurrence of the normalized Hermite functions, which stays in
/// range where H_n(x) / sqrt(2^n n!) would not.
template <typename Real>
KetT<Real> quadrature_wavefunctions(int n_max, Real x, Real lambda) {
  if (n_max < 0) throw std::invalid_argument("quadrature_wavefunctions: n_max < 0");
  std::vector<Real> psi(n_max + 1);
  psi[0] = std::pow(std::numbers::pi_v<Real>, Real(-0.25)) * std::exp(-x * x / 2);
  if (n_max >= 1) psi[1] = std::sqrt(Real(2)) * x * psi[0];
  for (int n = 1; n < n_max; ++n) {
    psi[n + 1] = std::sqrt(Real(2) / (n + 1)) * x * psi[n] - std::sqrt(Real(n) / (n + 1)) * psi[n - 1];
  }
  KetT<Real> out(n_max + 1);
  for (int n = 0; n <= n_max; ++n) out(n) = std::polar(psi[n], -n * lambda);
  return out;
}

template <typename Real>
std::complex<Real> quadrature_wavefunction(int n, Real x, Real lambda) {
  if (n < 0) throw std::invalid_argument("quadrature_wavefunction: n < 0");
  return quadrature_wavefunctions(n, x, lambda)(n);
}

template <typename Real>
TwoModeT<Real> tensor(const KetT<Real>& a, const KetT<Real>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("tensor: cutoff mismatch");
  return a * b.transpose();
}

// ---------------------------------------------------------------------------
// Beam splitter

enum class BeamSplitterConvention {
  /// a1^dag -> sqrt(T) a3^dag + i sqrt(1-T) a4^dag,  a2^dag -> i sqrt(1-T) a3^dag + sqrt(T) a4^dag
  Symmetric,
  /// a1^dag -> sqrt(T) a3^dag + sqrt(1-T) a4^dag,    a2^dag -> -sqrt(1-T) a3^dag + sqrt(T) a4^dag
  Real,
};

template <typename Real>
struct BeamSplitterSpec {
  Real transmittance;
  BeamSplitterConvention convention = BeamSplitterConvention::Symmetric;
};

template <typename Real>
struct BeamSplitterResult {
  TwoModeT<Real> state;
  /// Squared norm of input amplitudes with n + m > cutoff, which are discarded.
  Real dropped_mass;
};

/// The beam-splitter unitary restricted to the retained two-mode space,
/// stored as one block per total photon number s <= cutoff.
///
/// Each block is the spin-s/2 rotation through beta = 2 theta, cos(theta) =
/// sqrt(T), written through Jacobi polynomials of cos(beta) = 2T - 1. The
/// symmetric convention differs from the real one by the phase i^(j - k).
/// Block basis index j stands for |j, s - j>.
template <typename Real>
class BeamSplitterUnitary {
 public:
  BeamSplitterUnitary(BeamSplitterSpec<Real> spec, int cutoff) : spec_(spec) {
    if (!(spec.transmittance >= 0 && spec.transmittance <= 1)) {
      throw std::invalid_argument("beam splitter transmittance outside [0, 1]");
    }
    if (cutoff < 0) throw std::invalid_argument("beam splitter: negative cutoff");
    const bool endpoint = spec.transmittance == 1 || spec.transmittance == 0;
    const Real x = 2 * spec.transmittance - 1;
    const Real log_t = std::log(spec.transmittance) / 2;
    const Real log_r = std::log1p(-spec.transmittance) / 2;
    static constexpr std::complex<Real> kPowI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    blocks_.reserve(cutoff + 1);
    for (int s = 0; s <= cutoff; ++s) {
      if (endpoint) {
        blocks_.push_back(endpoint_block(s));
        continue;
      }
      OperatorT<Real> b(s + 1, s + 1);
      for (int j = 0; j <= s; ++j) {
        for (int k = 0; k <= s; ++k) {
          const Real d = small_d(s, k, j, x, log_t, log_r);
          b(k, j) = spec.convention == BeamSplitterConvention::Symmetric ? kPowI[((j - k) % 4 + 4) % 4] * d
                                                                          : std::complex<Real>(d);
        }
      }
      blocks_.push_back(std::move(b));
    }
  }

  int cutoff() const { return static_cast<int>(blocks_.size()) - 1; }
  const BeamSplitterSpec<Real>& spec() const { return spec_; }
  const OperatorT<Real>& block(int total) const { return blocks_.at(total); }

  BeamSplitterResult<Real> apply(const TwoModeT<Real>& in) const {
    const int n_cut = cutoff();
    if (in.rows() != n_cut + 1 || in.cols() != n_cut + 1) {
      throw std::invalid_argument("beam splitter: state cutoff mismatch");
    }
    BeamSplitterResult<Real> out{TwoModeT<Real>::Zero(n_cut + 1, n_cut + 1), Real(0)};
    for (int n = 0; n <= n_cut; ++n) {
      for (int m = n_cut - n + 1; m <= n_cut; ++m) out.dropped_mass += std::norm(in(n, m));
    }
    KetT<Real> v;
    for (int s = 0; s <= n_cut; ++s) {
      v.resize(s + 1);
      bool any = false;
      for (int j = 0; j <= s; ++j) {
        v(j) = in(j, s - j);
        any = any || v(j) != std::complex<Real>(0);
      }
      if (!any) continue;
      const KetT<Real> w = blocks_[s] * v;
      for (int j = 0; j <= s; ++j) out.state(j, s - j) = w(j);
    }
    return out;
  }

 private:
  // Exact blocks for the fully transmitting and fully reflecting splitters,
  // where one of the log amplitudes is -inf.
  OperatorT<Real> endpoint_block(int s) const {
    if (spec_.transmittance == 1) return OperatorT<Real>::Identity(s + 1, s + 1);
    OperatorT<Real> b = OperatorT<Real>::Zero(s + 1, s + 1);
    const std::complex<Real> i(0, 1);
    for (int j = 0; j <= s; ++j) {
      // |j, s-j> -> |s-j, j>, every photon picking up the reflection phase
      b(s - j, j) = spec_.convention == BeamSplitterConvention::Symmetric
                        ? std::pow(i, s)
                        : std::complex<Real>((s - j) % 2 ? -1 : 1);
    }
    return b;
  }

  // <k, s-k| U |j, s-j> in the real convention: the Wigner element
  // d^{s/2}_{k - s/2, j - s/2}(beta).
  static Real small_d(int s, int k, int j, Real x, Real log_t, Real log_r) {
    const int n = std::min({j, s - j, k, s - k});
    const int a = std::abs(k - j);
    const int b = s - 2 * n - a;
    const bool odd = (n == j || n == s - k) && (k - j) % 2 != 0;
    const Real log_scale = (std::lgamma(Real(s - n + 1)) - std::lgamma(Real(n + a + 1)) - std::lgamma(Real(s - 2 * n - a + 1)) -
                            std::lgamma(Real(n + b + 1)) + std::lgamma(Real(b + 1)) + std::lgamma(Real(n + 1))) /
                               2 +
                           a * log_r + b * log_t;
    const Real value = std::exp(log_scale) * jacobi(n, a, b, x);
    return odd ? -value : value;
  }

  // P_n^(a,b)(x) by the three-term recurrence in the degree.
  static Real jacobi(int n, int a, int b, Real x) {
    Real p0 = 1;
    if (n == 0) return p0;
    Real p1 = (a - b) / Real(2) + (a + b + 2) * x / 2;
    for (int m = 2; m <= n; ++m) {
      const Real c = 2 * m + a + b;
      const Real p2 = ((c - 1) * (c * (c - 2) * x + Real(a * a - b * b)) * p1 - 2 * Real(m + a - 1) * (m + b - 1) * c * p0) /
                      (2 * Real(m) * (m + a + b) * (c - 2));
      p0 = p1;
      p1 = p2;
    }
    return p1;
  }

  BeamSplitterSpec<Real> spec_;
  std::vector<OperatorT<Real>> blocks_;
};

template <typename Real>
BeamSplitterResult<Real> beam_splitter_apply(const TwoModeT<Real>& s, BeamSplitterSpec<Real> spec) {
  return BeamSplitterUnitary<Real>(spec, cutoff_of(s)).apply(s);
}

// ---------------------------------------------------------------------------
// Measurement and reduction

template <typename Real>
struct Projection {
  /// Unnormalized state of the unmeasured mode.
  KetT<Real> state;
  /// Its squared norm: a probability for photon counting, a probability
  /// density in x for quadrature measurement.
  Real weight;
};

template <typename Real>
Projection<Real> project_fock(const TwoModeT<Real>& s, Mode measured, int n) {
  if (n < 0 || n > cutoff_of(s)) throw std::invalid_argument("project_fock: n outside [0, cutoff]");
  KetT<Real> v = measured == Mode::Three ? KetT<Real>(s.row(n).transpose()) : KetT<Real>(s.col(n));
  const Real w = v.squaredNorm();
  return {std::move(v), w};
}

template <typename Real>
Projection<Real> project_quadrature(const TwoModeT<Real>& s, Mode measured, Real x, Real lambda) {
  const KetT<Real> bra = quadrature_wavefunctions(cutoff_of(s), x, lambda);
  KetT<Real> v = measured == Mode::Three ? KetT<Real>(s.transpose() * bra) : KetT<Real>(s * bra);
  const Real w = v.squaredNorm();
  return {std::move(v), w};
}

template <typename Real>
DensityT<Real> partial_trace(const TwoModeT<Real>& s, Mode traced) {
  if (traced == Mode::Four) return s * s.adjoint();
  return s.transpose() * s.conjugate();
}

template <typename Real>
DensityT<Real> density_from(const KetT<Real>& v) {
  return v * v.adjoint();
}

template <typename Real>
Real fidelity(const KetT<Real>& target, const KetT<Real>& out) {
  if (!is_normalized(target, Real(tol::kFidelityInput)) || !is_normalized(out, Real(tol::kFidelityInput))) {
    throw std::invalid_argument("fidelity: unnormalized input");
  }
  if (out.size() != target.size()) throw std::invalid_argument("fidelity: cutoff mismatch");
  return std::norm(target.dot(out));
}

template <typename Real>
Real fidelity(const KetT<Real>& target, const DensityT<Real>& rho) {
  if (!is_normalized(target, Real(tol::kFidelityInput)) ||
      std::abs(rho.trace().real() - 1) > Real(tol::kFidelityInput)) {
    throw std::invalid_argument("fidelity: unnormalized input");
  }
  if (rho.rows() != target.size()) throw std::invalid_argument("fidelity: cutoff mismatch");
  return (target.adjoint() * rho * target)(0, 0).real();
}

}  // namespace fockherald
