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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>
#include <random>

#include "fockherald/errors.hpp"
#include "fockherald/fock.hpp"
#include "fockherald/quadrature.hpp"

using namespace fockherald;

namespace {

const Complex I(0, 1);

TwoMode random_two_mode(int cutoff, std::mt19937_64& rng, bool within_support = true) {
  std::normal_distribution<double> g;
  TwoMode s = TwoMode::Zero(cutoff + 1, cutoff + 1);
  for (int n = 0; n <= cutoff; ++n) {
    for (int m = 0; m <= cutoff; ++m) {
      if (!within_support || n + m <= cutoff) s(n, m) = {g(rng), g(rng)};
    }
  }
  return s / s.norm();
}

Ket random_ket(int cutoff, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Ket v(cutoff + 1);
  for (auto& c : v) c = {g(rng), g(rng)};
  return v.normalized();
}

// Explicit sum H_n(z) = n! sum_m (-1)^m (2z)^(n-2m) / (m! (n-2m)!)
Complex hermite_explicit(int n, Complex z) {
  Complex sum = 0;
  for (int m = 0; 2 * m <= n; ++m) {
    const double c = std::exp(std::lgamma(n + 1.0) - std::lgamma(m + 1.0) - std::lgamma(n - 2 * m + 1.0));
    sum += (m % 2 ? -c : c) * std::pow(2.0 * z, n - 2 * m);
  }
  return sum;
}

// exp(i theta (a1^dag a2 + a1 a2^dag)) on a per-mode space of dimension d
Operator dense_beam_splitter(double transmittance, int d) {
  Operator a = Operator::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(double(n));
  const Operator id = Operator::Identity(d, d);
  const Operator a1 = Eigen::kroneckerProduct(a, id), a2 = Eigen::kroneckerProduct(id, a);
  const Operator g = a1.adjoint() * a2 + a1 * a2.adjoint();
  const double theta = std::acos(std::sqrt(transmittance));
  return Operator(I * theta * g).exp();
}

}  // namespace

TEST_CASE("hermite recurrence") {
  auto h = hermite_sequence(Complex(0.5), 1);
  CHECK(std::abs(h(0) - 1.0) < 1e-15);
  CHECK(std::abs(h(1) - 1.0) < 1e-15);
  h = hermite_sequence(I, 2);
  CHECK(std::abs(h(1) - 2.0 * I) < 1e-15);
  CHECK(std::abs(h(2) + 6.0) < 1e-15);

  for (Complex z : {Complex(1.3, 0.2), Complex(-4.1, 2.7), Complex(0.05, -3.0), Complex(3.5, 3.5)}) {
    if (std::abs(z) > 5) continue;
    const auto seq = hermite_sequence(z, 25);
    for (int n = 0; n <= 25; ++n) {
      const Complex ref = hermite_explicit(n, z);
      CHECK(std::abs(seq(n) - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("hermite overflow reports the index") {
  try {
    hermite_sequence(Complex(1e150), 10);
    FAIL("expected overflow");
  } catch (const OverflowError& e) {
    CHECK(e.index() >= 2);
    CHECK(e.index() <= 10);
  }
}

TEST_CASE("quadrature wavefunctions") {
  CHECK(std::abs(quadrature_wavefunction(0, 0.0, 1.7) - std::pow(std::numbers::pi, -0.25)) < 1e-15);
  CHECK(std::abs(quadrature_wavefunction(1, 0.0, 0.0)) < 1e-15);
  CHECK(std::abs(std::abs(quadrature_wavefunction(3, 1.2, 0.7)) - std::abs(quadrature_wavefunction(3, 1.2, 0.0))) <
        1e-15);
  // phase convention <x|n>_lambda = e^{-i n lambda} psi_n(x)
  CHECK(std::abs(quadrature_wavefunction(2, 0.4, 0.3) - std::polar(1.0, -0.6) * quadrature_wavefunction(2, 0.4, 0.0)) <
        1e-15);

  SUBCASE("orthonormal on the real line") {
    const auto rule = gauss_legendre(64);
    for (int n = 0; n <= 15; ++n) {
      for (int m = n; m <= 15; ++m) {
        double overlap = 0;
        for (int k = 0; k < 16; ++k) {
          const double a = -12 + 1.5 * k;
          overlap += integrate(rule, a, a + 1.5, [&](double x) {
            return (std::conj(quadrature_wavefunction(n, x, 0.0)) * quadrature_wavefunction(m, x, 0.0)).real();
          });
        }
        CHECK(std::abs(overlap - (n == m ? 1.0 : 0.0)) < 1e-12);
      }
    }
  }
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  const auto rule = gauss_legendre(64);
  CHECK(std::abs(rule.weights.sum() - 2) < 1e-14);
  CHECK(std::abs(integrate(rule, 0, 2, [](double x) { return std::pow(x, 127); }) - std::pow(2.0, 128) / 128) <
        1e-12 * std::pow(2.0, 128) / 128);
}

TEST_CASE("tensor product") {
  const TwoMode vac = tensor(fock_state(0, 4), fock_state(0, 4));
  CHECK(vac(0, 0) == Complex(1));
  CHECK(vac.norm() == doctest::Approx(1));
  const TwoMode one = tensor(fock_state(1, 4), fock_state(0, 4));
  CHECK(one(1, 0) == Complex(1));
  std::mt19937_64 rng(3);
  const TwoMode prod = tensor(random_ket(6, rng), random_ket(6, rng));
  CHECK(std::abs(prod.squaredNorm() - 1) < 1e-12);
  CHECK_THROWS_AS(tensor(fock_state(0, 3), fock_state(0, 4)), std::invalid_argument);
}

TEST_CASE("beam splitter conventions and limits") {
  const int cutoff = 6;
  const TwoMode one_zero = tensor(fock_state(1, cutoff), fock_state(0, cutoff));
  SUBCASE("transparent") {
    const auto out = beam_splitter_apply(one_zero, BeamSplitterSpec<double>{1.0});
    CHECK(std::abs(std::abs(out.state(1, 0)) - 1) < 1e-15);
  }
  SUBCASE("single photon splits with an i on the reflected arm") {
    const double t = 0.3;
    const auto out = beam_splitter_apply(one_zero, BeamSplitterSpec<double>{t});
    CHECK(std::abs(out.state(1, 0) - std::sqrt(t)) < 1e-14);
    CHECK(std::abs(out.state(0, 1) - I * std::sqrt(1 - t)) < 1e-14);
    const auto real = beam_splitter_apply(one_zero, BeamSplitterSpec<double>{t, BeamSplitterConvention::Real});
    CHECK(std::abs(real.state(1, 0) - std::sqrt(t)) < 1e-14);
    CHECK(std::abs(real.state(0, 1) - std::sqrt(1 - t)) < 1e-14);
  }
  SUBCASE("Hong-Ou-Mandel") {
    const TwoMode in = tensor(fock_state(1, cutoff), fock_state(1, cutoff));
    const auto out = beam_splitter_apply(in, BeamSplitterSpec<double>{0.5});
    CHECK(out.state(1, 1) == Complex(0));
    const auto real = beam_splitter_apply(in, BeamSplitterSpec<double>{0.5, BeamSplitterConvention::Real});
    CHECK(real.state(1, 1) == Complex(0));
    CHECK(std::abs(out.state(2, 0) - I / std::sqrt(2.0)) < 1e-14);
    CHECK(std::abs(out.state(0, 2) - I / std::sqrt(2.0)) < 1e-14);
  }
}

TEST_CASE("beam splitter matches the dense matrix exponential") {
  const int cutoff = 8, d = 12;
  std::mt19937_64 rng(11);
  for (double t : {0.1, 0.37, 0.5, 0.9}) {
    const Operator u = dense_beam_splitter(t, d);
    const TwoMode in = random_two_mode(cutoff, rng);
    Ket flat = Ket::Zero(d * d);
    for (int n = 0; n <= cutoff; ++n) {
      for (int m = 0; m <= cutoff; ++m) flat(n * d + m) = in(n, m);
    }
    const Ket ref = u * flat;
    const auto out = beam_splitter_apply(in, BeamSplitterSpec<double>{t});
    double err = 0;
    for (int n = 0; n <= cutoff; ++n) {
      for (int m = 0; m <= cutoff; ++m) err = std::max(err, std::abs(out.state(n, m) - ref(n * d + m)));
    }
    CHECK(err < 1e-12);
    CHECK(std::abs(out.state.squaredNorm() - 1) < 1e-12);
    CHECK(out.dropped_mass == 0);
  }
}

TEST_CASE("beam splitter endpoints are exact") {
  const int cutoff = 6;
  const TwoMode in = tensor(fock_state(2, cutoff), fock_state(1, cutoff));
  const auto full = beam_splitter_apply(in, BeamSplitterSpec<double>{0.0});
  CHECK(full.state(1, 2) == std::pow(I, 3));
  CHECK(full.state.squaredNorm() == 1);
  const auto real = beam_splitter_apply(in, BeamSplitterSpec<double>{0.0, BeamSplitterConvention::Real});
  CHECK(real.state(1, 2) == Complex(-1));
  CHECK((beam_splitter_apply(in, BeamSplitterSpec<double>{1.0}).state - in).norm() == 0);
  // the endpoints continue the interior family
  const auto near = beam_splitter_apply(in, BeamSplitterSpec<double>{1e-14});
  CHECK((near.state - full.state).norm() < 1e-6);
}

TEST_CASE("beam splitter blocks are unitary and conserve photon number") {
  const BeamSplitterUnitary<double> u(BeamSplitterSpec<double>{0.37}, 30);
  for (int s = 0; s <= 30; ++s) {
    const Operator& b = u.block(s);
    CHECK((b * b.adjoint() - Operator::Identity(s + 1, s + 1)).norm() < 1e-12);
  }
  for (double t : {1e-6, 0.5, 0.999}) {
    const BeamSplitterUnitary<double> big(BeamSplitterSpec<double>{t}, 160);
    for (int s : {60, 120, 160}) {
      const Operator& b = big.block(s);
      CHECK((b.adjoint() * b - Operator::Identity(s + 1, s + 1)).cwiseAbs().maxCoeff() < 1e-11);
    }
  }
  // total photon number 5 in, total photon number 5 out
  std::mt19937_64 rng(5);
  TwoMode in = TwoMode::Zero(10, 10);
  std::normal_distribution<double> g;
  for (int n = 0; n <= 5; ++n) in(n, 5 - n) = {g(rng), g(rng)};
  in.normalize();
  const auto out = beam_splitter_apply(in, BeamSplitterSpec<double>{0.63});
  double off_shell = 0;
  for (int n = 0; n < 10; ++n) {
    for (int m = 0; m < 10; ++m) {
      if (n + m != 5) off_shell += std::norm(out.state(n, m));
    }
  }
  CHECK(off_shell == 0);
}

TEST_CASE("beam splitter reports dropped mass above the cutoff") {
  const int cutoff = 4;
  TwoMode in = TwoMode::Zero(cutoff + 1, cutoff + 1);
  in(2, 2) = std::sqrt(0.25);  // n + m = 4, kept
  in(3, 4) = std::sqrt(0.75);  // n + m = 7, dropped
  const auto out = beam_splitter_apply(in, BeamSplitterSpec<double>{0.5});
  CHECK(out.dropped_mass == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(out.state.squaredNorm() == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("fock projection") {
  const int cutoff = 5;
  auto p = project_fock(tensor(fock_state(1, cutoff), fock_state(0, cutoff)), Mode::Three, 1);
  CHECK(p.weight == doctest::Approx(1));
  CHECK(p.state(0) == Complex(1));
  p = project_fock(tensor(fock_state(0, cutoff), fock_state(0, cutoff)), Mode::Three, 1);
  CHECK(p.weight == 0);

  std::mt19937_64 rng(17);
  const TwoMode s = beam_splitter_apply(tensor(random_ket(cutoff, rng), random_ket(cutoff, rng)),
                                        BeamSplitterSpec<double>{0.42})
                        .state;
  const Density rho3 = partial_trace(s, Mode::Four);
  const Density rho4 = partial_trace(s, Mode::Three);
  for (int n = 0; n <= cutoff; ++n) {
    CHECK(std::abs(project_fock(s, Mode::Three, n).weight - rho3(n, n).real()) < 1e-12);
    CHECK(std::abs(project_fock(s, Mode::Four, n).weight - rho4(n, n).real()) < 1e-12);
  }
}

TEST_CASE("quadrature projection") {
  const int cutoff = 10;
  const auto vac = project_quadrature(tensor(fock_state(0, cutoff), fock_state(0, cutoff)), Mode::Three, 0.0, 0.0);
  CHECK(vac.weight == doctest::Approx(1 / std::sqrt(std::numbers::pi)).epsilon(1e-14));

  std::mt19937_64 rng(23);
  const TwoMode s = random_two_mode(cutoff, rng, false);
  const auto a = project_quadrature(s, Mode::Three, 0.7, 1.1);
  const auto b = project_quadrature(s, Mode::Three, 0.7, 1.1 + 2 * std::numbers::pi);
  CHECK((a.state - b.state).norm() < 1e-12);

  // the projected density integrates to the total norm
  const auto rule = gauss_legendre(64);
  for (Mode mode : {Mode::Three, Mode::Four}) {
    double total = 0;
    for (int k = 0; k < 24; ++k) {
      const double lo = -12 + k;
      total += integrate(rule, lo, lo + 1, [&](double x) { return project_quadrature(s, mode, x, 0.4).weight; });
    }
    CHECK(std::abs(total - s.squaredNorm()) < 1e-6);
  }

  // density equals <x|rho3|x>
  const Density rho3 = partial_trace(s, Mode::Four);
  const Ket bra = quadrature_wavefunctions(cutoff, 0.3, 0.9);
  const double direct = (bra.transpose() * rho3 * bra.conjugate())(0, 0).real();
  CHECK(std::abs(project_quadrature(s, Mode::Three, 0.3, 0.9).weight - direct) < 1e-12);
}

TEST_CASE("partial trace") {
  const int cutoff = 3;
  const Density r = partial_trace(tensor(fock_state(1, cutoff), fock_state(0, cutoff)), Mode::Four);
  CHECK(std::abs(r(1, 1) - 1.0) < 1e-15);
  TwoMode bell = TwoMode::Zero(cutoff + 1, cutoff + 1);
  bell(0, 0) = bell(1, 1) = 1 / std::sqrt(2.0);
  for (Mode m : {Mode::Three, Mode::Four}) {
    const Density rho = partial_trace(bell, m);
    CHECK(std::abs(rho(0, 0) - 0.5) < 1e-15);
    CHECK(std::abs(rho(1, 1) - 0.5) < 1e-15);
    CHECK(std::abs(rho(0, 1)) < 1e-15);
  }
  std::mt19937_64 rng(29);
  const Ket a = random_ket(cutoff, rng), b = random_ket(cutoff, rng);
  CHECK((partial_trace(tensor(a, b), Mode::Four) - a * a.adjoint()).norm() < 1e-12);
  CHECK((partial_trace(tensor(a, b), Mode::Three) - b * b.adjoint()).norm() < 1e-12);
}

TEST_CASE("fidelity") {
  std::mt19937_64 rng(31);
  const Ket psi = random_ket(6, rng);
  CHECK(fidelity(psi, psi) == doctest::Approx(1).epsilon(1e-14));
  CHECK(fidelity(fock_state(0, 6), fock_state(1, 6)) == 0);
  CHECK_THROWS_AS(fidelity(psi, Ket(2.0 * psi)), std::invalid_argument);

  // mixture built by hand against the direct sum
  std::vector<Ket> ks;
  const std::vector<double> p{0.5, 0.3, 0.2};
  Density rho = Density::Zero(7, 7);
  for (double w : p) {
    ks.push_back(random_ket(6, rng));
    rho += w * ks.back() * ks.back().adjoint();
  }
  double ref = 0;
  for (std::size_t k = 0; k < p.size(); ++k) ref += p[k] * std::norm(psi.dot(ks[k]));
  CHECK(std::abs(fidelity(psi, rho) - ref) < 1e-14);
}

TEST_CASE("tail mass") {
  Ket v = Ket::Zero(10);
  v(0) = std::sqrt(0.9);
  v(9) = std::sqrt(0.1);
  CHECK(tail_mass(v) == doctest::Approx(0.1));
  CHECK(tail_mass(fock_state(2, 10)) == 0);
}
