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

#include "fockherald/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fockherald {
namespace {

void check_cutoff(int cutoff) {
  if (cutoff < 0) throw std::invalid_argument("negative cutoff");
}

// Normalizes a target and enforces the tail-mass limit on the top states.
// Families with finite support (binomial, ad hoc) fit exactly and skip the check.
Ket finish_target(Ket v, bool finite_support = false) {
  v = normalized(v);
  if (finite_support) return v;
  const double tail = tail_mass(v);
  if (tail > tol::kTailMassLimit) throw CutoffError(tail, cutoff_of(v));
  return v;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string fmt(Complex z) {
  if (z.imag() == 0) return fmt(z.real());
  if (z.real() == 0) return fmt(z.imag()) + "i";
  return fmt(z.real()) + (z.imag() < 0 ? "" : "+") + fmt(z.imag()) + "i";
}

}  // namespace

Complex SqueezedCoherentParams::beta() const {
  const Complex a = alpha();
  return a * std::cosh(r) + std::conj(a) * std::polar(1.0, theta) * std::sinh(r);
}

Ket squeezed_coherent_amplitudes(const SqueezedCoherentParams& p, int cutoff) {
  check_cutoff(cutoff);
  if (p.r < 0 || p.alpha_abs < 0) throw std::invalid_argument("squeezed_coherent: negative r or |alpha|");
  Ket c(cutoff + 1);
  const Complex alpha = p.alpha();
  if (p.r < tol::kMinSqueezing) {
    // coherent state
    Complex term = std::exp(-std::norm(alpha) / 2);
    for (int n = 0; n <= cutoff; ++n) {
      if (n > 0) term *= alpha / std::sqrt(double(n));
      c(n) = term;
    }
    return c;
  }
  const Complex e_theta = std::polar(1.0, p.theta);
  const Complex half_phase = std::polar(1.0, p.theta / 2);
  const double tanh_r = std::tanh(p.r);
  const Complex prefactor =
      std::exp(-std::norm(alpha) / 2 - std::conj(alpha) * std::conj(alpha) * e_theta * tanh_r / 2.0) /
      std::sqrt(std::cosh(p.r));
  // (e^{i theta} tanh r / 2)^{n/2} H_n(beta (e^{i theta} sinh 2r)^{-1/2}) / sqrt(n!),
  // with both square roots of e^{i theta} taken on the same branch.
  const Complex z = p.beta() / (half_phase * std::sqrt(std::sinh(2 * p.r)));
  const auto h = hermite_sequence(z, cutoff);
  const Complex step = std::sqrt(tanh_r / 2) * half_phase;
  Complex factor = prefactor;
  for (int n = 0; n <= cutoff; ++n) {
    if (n > 0) factor *= step / std::sqrt(double(n));
    c(n) = factor * h(n);
  }
  return c;
}

Ket squeezed_coherent(const SqueezedCoherentParams& p, int cutoff) {
  Ket c = squeezed_coherent_amplitudes(p, cutoff);
  const double missing = std::max(0.0, 1.0 - c.squaredNorm());
  if (missing > tol::kTailMassLimit) throw CutoffError(missing, cutoff);
  return normalized(c);
}

Ket binomial_state(double p, int M, int cutoff) {
  check_cutoff(cutoff);
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("binomial_state: p outside [0, 1]");
  if (M < 0 || M > cutoff) throw std::invalid_argument("binomial_state: M outside [0, cutoff]");
  Ket c = Ket::Zero(cutoff + 1);
  double binom = 1;
  for (int n = 0; n <= M; ++n) {
    if (n > 0) binom = binom * (M - n + 1) / n;
    c(n) = std::sqrt(binom * std::pow(p, n) * std::pow(1 - p, M - n));
  }
  return finish_target(c, true);
}

Ket negative_binomial_state(double eta_nb, int M, double varphi, int cutoff) {
  check_cutoff(cutoff);
  if (!(eta_nb >= 0 && eta_nb < 1)) throw std::invalid_argument("negative_binomial_state: eta_nb outside [0, 1)");
  if (M < 1) throw std::invalid_argument("negative_binomial_state: M < 1");
  Ket c(cutoff + 1);
  const Complex step = std::polar(eta_nb, varphi);
  Complex term = 1;
  for (int n = 0; n <= cutoff; ++n) {
    // sqrt(C(M+n-1, n)) (eta e^{i varphi})^n
    if (n > 0) term *= std::sqrt(double(M + n - 1) / n) * step;
    c(n) = term;
  }
  return finish_target(c);
}

Ket amplitude_squeezed_state(double alpha0, double u, double delta_as, int cutoff) {
  check_cutoff(cutoff);
  if (!(alpha0 > 0) || !(u > 0)) throw std::invalid_argument("amplitude_squeezed_state: alpha0 and u must be positive");
  if (!(delta_as >= 0)) throw std::invalid_argument("amplitude_squeezed_state: delta_as < 0");
  // log-domain so that narrow Gaussians (u << 1) do not underflow every term
  Eigen::VectorXd log_c(cutoff + 1);
  for (int n = 0; n <= cutoff; ++n) {
    log_c(n) = n * std::log(alpha0) - 0.5 * std::lgamma(n + 1.0) -
               (delta_as - n) * (delta_as - n) / (2 * u * u);
  }
  const double peak = log_c.maxCoeff();
  Ket c(cutoff + 1);
  for (int n = 0; n <= cutoff; ++n) c(n) = std::exp(log_c(n) - peak);
  return finish_target(c);
}

Operator squeeze_operator_matrix(Complex zeta, int cutoff) {
  check_cutoff(cutoff);
  const double r = std::abs(zeta);
  if (r > tol::kMaxSqueezeOperator) throw std::invalid_argument("squeeze_operator_matrix: |zeta| > 2");
  if (r == 0) return Operator::Identity(cutoff + 1, cutoff + 1);
  const double theta = std::arg(zeta);
  const double log_half_tanh = std::log(std::tanh(r) / 2);
  const double log_cosh = std::log(std::cosh(r));
  std::vector<double> lfact(cutoff + 1);
  for (int n = 0; n <= cutoff; ++n) lfact[n] = std::lgamma(n + 1.0);

  // S = exp(-t a^dag^2 / 2) cosh(r)^{-(a^dag a + 1/2)} exp(t^* a^2 / 2), t = e^{i theta} tanh r
  Operator s = Operator::Zero(cutoff + 1, cutoff + 1);
  for (int m = 0; m <= cutoff; ++m) {
    for (int n = m % 2; n <= cutoff; n += 2) {
      Complex sum = 0;
      for (int k = m % 2; k <= std::min(m, n); k += 2) {
        const int j = (m - k) / 2;  // pairs created
        const int i = (n - k) / 2;  // pairs annihilated
        const double log_mag = 0.5 * (lfact[m] - lfact[k]) + 0.5 * (lfact[n] - lfact[k]) - lfact[j] - lfact[i] +
                               (i + j) * log_half_tanh - k * log_cosh;
        const double sign = j % 2 == 0 ? 1.0 : -1.0;
        sum += sign * std::polar(std::exp(log_mag), theta * (j - i));
      }
      s(m, n) = sum / std::sqrt(std::cosh(r));
    }
  }
  const double vacuum_loss = std::abs(s.col(0).squaredNorm() - 1);
  if (vacuum_loss > tol::kSqueezeColumnNorm) throw CutoffError(vacuum_loss, cutoff);
  return s;
}

Ket resource_state(Complex zeta, Complex chi_prime, int cutoff) {
  if (cutoff < 3) throw std::invalid_argument("resource_state: cutoff must be at least 3");
  Ket v = Ket::Zero(cutoff + 1);
  v(0) = 1;
  v(1) = chi_prime * 3.0 / (2.0 * std::sqrt(2.0));
  v(3) = chi_prime * std::sqrt(3.0) / 2.0;
  v = normalized(v);
  Ket out = squeeze_operator_matrix(zeta, cutoff) * v;
  const double lost = std::abs(1 - out.squaredNorm());
  if (lost > tol::kTailMassLimit) throw CutoffError(lost, cutoff);
  return finish_target(out);
}

Ket adhoc_superposition(std::span<const Complex> coeffs, int cutoff) {
  check_cutoff(cutoff);
  if (coeffs.size() > static_cast<std::size_t>(cutoff) + 1) {
    throw std::invalid_argument("adhoc_superposition: more coefficients than the cutoff allows");
  }
  Ket c = Ket::Zero(cutoff + 1);
  for (std::size_t n = 0; n < coeffs.size(); ++n) c(n) = coeffs[n];
  if (c.squaredNorm() == 0) throw std::invalid_argument("adhoc_superposition: all coefficients zero");
  return finish_target(c, true);
}

Ket make_target(const TargetSpec& spec, int cutoff) {
  struct Visitor {
    int cutoff;
    Ket operator()(const BinomialTarget& t) const { return binomial_state(t.p, t.M, cutoff); }
    Ket operator()(const NegativeBinomialTarget& t) const {
      return negative_binomial_state(t.eta_nb, t.M, t.varphi, cutoff);
    }
    Ket operator()(const AmplitudeSqueezedTarget& t) const {
      return amplitude_squeezed_state(t.alpha0, t.u, t.delta_as, cutoff);
    }
    Ket operator()(const ResourceTarget& t) const { return resource_state(t.zeta, t.chi_prime, cutoff); }
    Ket operator()(const AdHocTarget& t) const { return adhoc_superposition(t.coefficients, cutoff); }
  };
  return std::visit(Visitor{cutoff}, spec);
}

std::string describe(const TargetSpec& spec) {
  struct Visitor {
    std::string operator()(const BinomialTarget& t) const { return "|" + fmt(t.p) + "," + std::to_string(t.M) + ">_B"; }
    std::string operator()(const NegativeBinomialTarget& t) const {
      return "|" + fmt(t.eta_nb) + "," + std::to_string(t.M) + "," + fmt(t.varphi) + ">_NB";
    }
    std::string operator()(const AmplitudeSqueezedTarget& t) const {
      return "|" + fmt(t.alpha0) + "," + fmt(t.u) + "," + fmt(t.delta_as) + ">_AS";
    }
    std::string operator()(const ResourceTarget& t) const {
      return "|Psi(" + fmt(t.zeta) + "," + fmt(t.chi_prime) + ")>_RS";
    }
    std::string operator()(const AdHocTarget& t) const {
      std::string out = "N(";
      bool first = true;
      for (std::size_t n = 0; n < t.coefficients.size(); ++n) {
        if (t.coefficients[n] == Complex(0)) continue;
        if (!first) out += " + ";
        out += fmt(t.coefficients[n]) + "|" + std::to_string(n) + ">";
        first = false;
      }
      return out + ")";
    }
  };
  return std::visit(Visitor{}, spec);
}

}  // namespace fockherald
