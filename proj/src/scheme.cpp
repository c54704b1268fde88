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

#include "fockherald/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fockherald/quadrature.hpp"

namespace fockherald {
namespace {

constexpr Complex kI(0, 1);

void check_cutoff(int cutoff) {
  if (cutoff < 1) throw std::invalid_argument("scheme: cutoff must be at least 1");
}

// B_p^q(x) = C(q, p) sqrt(x)^{q-p} sqrt(1-x)^p, zero outside 0 <= p <= q.
Eigen::MatrixXd b_table(double x, int q_max) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(q_max + 1, q_max + 1);  // (q, p)
  const double sx = std::sqrt(x), sy = std::sqrt(1 - x);
  for (int q = 0; q <= q_max; ++q) {
    double binom = 1;
    for (int p = 0; p <= q; ++p) {
      if (p > 0) binom = binom * (q - p + 1) / p;
      b(q, p) = binom * std::pow(sx, q - p) * std::pow(sy, p);
    }
  }
  return b;
}

// Per-input factor of the closed forms:
//   exp(-|a|^2/2 - a*^2 e^{i theta} tanh(r)/2) / sqrt(cosh r)
//     * (e^{i theta} tanh(r) / 2)^{n/2} H_n(beta (e^{i theta} sinh 2r)^{-1/2}) / n!
// times extra^n. Both square roots of e^{i theta} use e^{i theta/2}, which
// makes the product independent of the branch.
Ket input_factors(const SqueezedCoherentParams& in, int cutoff, Complex extra) {
  const Complex alpha = in.alpha();
  const Complex e_theta = std::polar(1.0, in.theta);
  const Complex half_phase = std::polar(1.0, in.theta / 2);
  const double tanh_r = std::tanh(in.r);
  const Complex pre = std::exp(-std::norm(alpha) / 2 - std::conj(alpha) * std::conj(alpha) * e_theta * tanh_r / 2.0) /
                      std::sqrt(std::cosh(in.r));
  const Complex z = in.beta() / (half_phase * std::sqrt(std::sinh(2 * in.r)));
  const auto h = hermite_sequence(z, cutoff);
  const Complex step = std::sqrt(tanh_r / 2) * half_phase * extra;
  Ket g(cutoff + 1);
  Complex f = pre;
  for (int n = 0; n <= cutoff; ++n) {
    if (n > 0) f *= step / double(n);
    g(n) = f * h(n);
  }
  return g;
}

// 1 - sum_{n+m <= N} |c_n d_m|^2 for the exact input expansions.
double input_truncation_loss(const SchemeParams& p, int cutoff) {
  const Ket c = squeezed_coherent_amplitudes(p.in1, cutoff);
  const Ket d = squeezed_coherent_amplitudes(p.in2, cutoff);
  Eigen::VectorXd cum(cutoff + 1);
  double acc = 0;
  for (int m = 0; m <= cutoff; ++m) cum(m) = acc += std::norm(d(m));
  double kept = 0;
  for (int n = 0; n <= cutoff; ++n) kept += std::norm(c(n)) * cum(cutoff - n);
  return std::max(0.0, 1 - kept);
}

void check_squeezing(const SchemeParams& p) {
  if (p.in1.r < tol::kMinSqueezing || p.in2.r < tol::kMinSqueezing) {
    throw std::invalid_argument("closed form is singular for r below the squeezing threshold");
  }
}

void check_transmittance(const SchemeParams& p) {
  if (!(p.transmittance >= 0 && p.transmittance <= 1)) throw std::invalid_argument("transmittance outside [0, 1]");
}

ConditionalOutput finish(Ket amps, double truncation_loss, TailPolicy tail, int cutoff) {
  if (tail == TailPolicy::Throw && truncation_loss > tol::kTailMassLimit) throw CutoffError(truncation_loss, cutoff);
  const double w = amps.squaredNorm();
  if (!std::isfinite(w)) throw NumericError("conditional output is not finite");
  if (w > 0) amps /= std::sqrt(w);
  return {std::move(amps), w, truncation_loss};
}

}  // namespace

Eigen::VectorXd to_vector(const SchemeParams& p) {
  Eigen::VectorXd v(parameter_count(measurement_of(p)));
  v.head<9>() << p.in1.r, p.in1.theta, p.in1.alpha_abs, p.in1.phi, p.in2.r, p.in2.theta, p.in2.alpha_abs, p.in2.phi,
      p.transmittance;
  if (p.homodyne) {
    v(9) = p.homodyne->x;
    v(10) = p.homodyne->lambda;
  }
  return v;
}

SchemeParams from_vector(const Eigen::VectorXd& v, double window_halfwidth) {
  if (v.size() != 9 && v.size() != 11) throw std::invalid_argument("from_vector: expected 9 or 11 parameters");
  SchemeParams p;
  p.in1 = {v(0), v(1), v(2), v(3)};
  p.in2 = {v(4), v(5), v(6), v(7)};
  p.transmittance = v(8);
  if (v.size() == 11) p.homodyne = Homodyne{v(9), v(10), window_halfwidth};
  return p;
}

ConditionalOutput output_spd_closed_form(const SchemeParams& p, int cutoff, TailPolicy tail) {
  check_cutoff(cutoff);
  check_squeezing(p);
  check_transmittance(p);
  const double t = p.transmittance;
  const Ket g1 = input_factors(p.in1, cutoff, 1.0);
  const Ket g2 = input_factors(p.in2, cutoff, 1.0);
  const Eigen::MatrixXd b_t = b_table(t, cutoff);
  const Eigen::MatrixXd b_r = b_table(1 - t, cutoff);
  const std::array<Complex, 4> i_pow = {1.0, kI, -1.0, -kI};

  Ket out = Ket::Zero(cutoff + 1);
  for (int n = 0; n <= cutoff; ++n) {
    for (int m = 0; n + m <= cutoff; ++m) {
      const int total = n + m - 1;
      if (total < 0) continue;
      // B_{n+m-k-1}^m vanishes unless k is n-1 or n: one photon reaches the detector.
      Complex sum = 0;
      for (int k = std::max(0, n - 1); k <= n; ++k) {
        const int j = total - k;
        if (j < 0 || j > m) continue;
        const int e = ((2 * k - n + 1) % 4 + 4) % 4;
        sum += i_pow[e] * b_t(n, k) * b_r(m, j);
      }
      out(total) += g1(n) * g2(m) * sum;
    }
  }
  double log_fact = 0;
  for (int q = 0; q <= cutoff; ++q) {
    if (q > 0) log_fact += std::log(double(q));
    out(q) *= std::exp(0.5 * log_fact);
  }
  return finish(std::move(out), input_truncation_loss(p, cutoff), tail, cutoff);
}

ConditionalOutput output_hm_closed_form(const SchemeParams& p, int cutoff, TailPolicy tail) {
  check_cutoff(cutoff);
  check_squeezing(p);
  check_transmittance(p);
  if (!p.homodyne) throw std::invalid_argument("output_hm_closed_form: SPD parameters");
  const double x = p.homodyne->x, lambda = p.homodyne->lambda, t = p.transmittance;
  // (1/4 e^{i(theta1 - 2 lambda)} tanh r1)^{n/2} and (-1/4 e^{i(theta2 - 2 lambda)} tanh r2)^{m/2}
  // as (e^{i theta/2} sqrt(tanh r / 2))^n (e^{-i lambda} / sqrt 2)^n, and (-1)^{m/2} = i^m.
  const Complex rot = std::polar(1.0 / std::sqrt(2.0), -lambda);
  const Ket g1 = input_factors(p.in1, cutoff, rot);
  const Ket g2 = input_factors(p.in2, cutoff, kI * rot);
  const Eigen::MatrixXd b_t = b_table(t, cutoff);
  const Eigen::MatrixXd b_r = b_table(1 - t, cutoff);
  const Eigen::VectorXd hx = hermite_sequence(x, cutoff);

  // a1(k, u) = g1(k+u) B_k^{k+u}(T);  a2(l, v) = (-1)^l g2(l+v) B_l^{l+v}(1-T)
  // k, l photons reach the output; u, v reach the detector.
  Operator a1 = Operator::Zero(cutoff + 1, cutoff + 1), a2 = Operator::Zero(cutoff + 1, cutoff + 1);
  for (int n = 0; n <= cutoff; ++n) {
    for (int k = 0; k <= n; ++k) {
      a1(k, n - k) = g1(n) * b_t(n, k);
      a2(k, n - k) = (k % 2 == 0 ? 1.0 : -1.0) * g2(n) * b_r(n, k);
    }
  }
  Ket out = Ket::Zero(cutoff + 1);
  for (int k = 0; k <= cutoff; ++k) {
    for (int l = 0; k + l <= cutoff; ++l) {
      const int budget = cutoff - k - l;
      Complex acc = 0;
      for (int u = 0; u <= budget; ++u) {
        Complex inner = 0;
        for (int v = 0; u + v <= budget; ++v) inner += a2(l, v) * hx(u + v);
        acc += a1(k, u) * inner;
      }
      out(k + l) += acc;
    }
  }
  // sqrt((k+l)!) (sqrt(2) i e^{i lambda})^{k+l} and pi^{-1/4} e^{-x^2/2}
  const Complex step = std::sqrt(2.0) * kI * std::polar(1.0, lambda);
  Complex f = std::pow(std::numbers::pi, -0.25) * std::exp(-x * x / 2);
  for (int q = 0; q <= cutoff; ++q) {
    if (q > 0) f *= step * std::sqrt(double(q));
    out(q) *= f;
  }
  return finish(std::move(out), input_truncation_loss(p, cutoff), tail, cutoff);
}

ConditionalOutput output_closed_form(const SchemeParams& p, int cutoff, TailPolicy tail) {
  if (p.in1.r < tol::kMinSqueezing || p.in2.r < tol::kMinSqueezing) {
    return output_oracle(p, cutoff, {.tail = tail});
  }
  return p.is_homodyne() ? output_hm_closed_form(p, cutoff, tail) : output_spd_closed_form(p, cutoff, tail);
}

BeamSplitterResult<double> post_beam_splitter_state(const SchemeParams& p, int cutoff, const OracleOptions& options) {
  check_cutoff(cutoff);
  check_transmittance(p);
  const TwoMode in = tensor(squeezed_coherent_amplitudes(p.in1, cutoff), squeezed_coherent_amplitudes(p.in2, cutoff));
  return beam_splitter_apply(in, BeamSplitterSpec<double>{p.transmittance, options.convention});
}

ConditionalOutput output_oracle(const SchemeParams& p, int cutoff, const OracleOptions& options) {
  const auto bs = post_beam_splitter_state(p, cutoff, options);
  const Projection<double> proj = p.is_homodyne()
                                      ? project_quadrature(bs.state, options.measured, p.homodyne->x, p.homodyne->lambda)
                                      : project_fock(bs.state, options.measured, 1);
  // the exact inputs have unit norm, so everything not retained was truncated
  const double retained = bs.state.squaredNorm();
  return finish(proj.state, std::max(0.0, 1 - retained), options.tail, cutoff);
}

double misfit(const Ket& out, const Ket& target) {
  if (out.squaredNorm() == 0) return 1.0;
  return std::clamp(1 - fidelity(target, out), 0.0, 1.0);
}

double misfit(const ConditionalOutput& out, const Ket& target) { return misfit(out.state, target); }

double misfit(const Density& out, const Ket& target) {
  if (std::abs(out.trace()) == 0) return 1.0;
  return std::clamp(1 - fidelity(target, out), 0.0, 1.0);
}

double success_prob_spd(const SchemeParams& p, int cutoff, TailPolicy tail) {
  if (p.is_homodyne()) throw std::invalid_argument("success_prob_spd: HM parameters");
  return output_closed_form(p, cutoff, tail).raw_weight;
}

HomodyneMarginal::HomodyneMarginal(const SchemeParams& p, int cutoff, TailPolicy tail) {
  if (!p.homodyne) throw std::invalid_argument("HomodyneMarginal: SPD parameters");
  auto bs = post_beam_splitter_state(p, cutoff);
  const double lost = std::max(0.0, 1 - bs.state.squaredNorm());
  if (tail == TailPolicy::Throw && lost > tol::kTailMassLimit) throw CutoffError(lost, cutoff);
  state_ = std::move(bs.state);
  lambda_ = p.homodyne->lambda;
}

double HomodyneMarginal::density(double x) const { return project_quadrature(state_, Mode::Three, x, lambda_).weight; }

Projection<double> HomodyneMarginal::project(double x) const {
  return project_quadrature(state_, Mode::Three, x, lambda_);
}

double HomodyneMarginal::probability(double a, double b) const {
  if (b < a) throw std::invalid_argument("probability: empty interval");
  if (b == a) return 0;
  static const GaussLegendreRule coarse = gauss_legendre(tol::kGaussLegendreNodes);
  static const GaussLegendreRule fine = gauss_legendre(2 * tol::kGaussLegendreNodes);
  const auto f = [this](double x) { return density(x); };
  const double width = b - a;
  // split until 64 and 128 nodes agree; tolerance shared in proportion to width
  const auto recurse = [&](auto&& self, double lo, double hi, int depth) -> double {
    const double i64 = integrate(coarse, lo, hi, f);
    const double i128 = integrate(fine, lo, hi, f);
    if (std::abs(i64 - i128) <= tol::kQuadratureAgreement * (hi - lo) / width) return i128;
    if (depth >= 10) throw NumericError("homodyne window quadrature did not converge");
    const double mid = (lo + hi) / 2;
    return self(self, lo, mid, depth + 1) + self(self, mid, hi, depth + 1);
  };
  return recurse(recurse, a, b, 0);
}

double success_prob_hm(const SchemeParams& p, int cutoff, TailPolicy tail) {
  if (!p.homodyne) throw std::invalid_argument("success_prob_hm: SPD parameters");
  const double w = p.homodyne->window_halfwidth;
  if (w < 0) throw std::invalid_argument("success_prob_hm: negative window");
  if (w == 0) return 0;
  const HomodyneMarginal marginal(p, cutoff, tail);
  return std::clamp(marginal.probability(p.homodyne->x - w, p.homodyne->x + w), 0.0, 1.0);
}

double average_misfit(const SchemeParams& p, const Ket& target, int n_subranges, int cutoff, TailPolicy tail) {
  if (!p.homodyne) throw std::invalid_argument("average_misfit: SPD parameters");
  if (n_subranges < 1) throw std::invalid_argument("average_misfit: n_subranges < 1");
  const double w = p.homodyne->window_halfwidth;
  if (!(w > 0)) throw std::invalid_argument("average_misfit: window half-width must be positive");
  const HomodyneMarginal marginal(p, cutoff, tail);
  const double lo = p.homodyne->x - w, step = 2 * w / n_subranges;
  double weighted = 0, total = 0;
  for (int j = 0; j < n_subranges; ++j) {
    const double a = lo + j * step, b = a + step;
    const double prob = marginal.probability(a, b);
    const auto proj = marginal.project((a + b) / 2);
    const double eps = proj.weight > 0 ? misfit(Ket(proj.state / std::sqrt(proj.weight)), target) : 1.0;
    weighted += eps * prob;
    total += prob;
  }
  if (!(total > 0)) throw NumericError("average_misfit: window carries no probability");
  return weighted / total;
}

double success_probability(const SchemeParams& p, int cutoff, TailPolicy tail) {
  return p.is_homodyne() ? success_prob_hm(p, cutoff, tail) : success_prob_spd(p, cutoff, tail);
}

}  // namespace fockherald
