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

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>

#include "fockherald/errors.hpp"
#include "fockherald/states.hpp"

using namespace fockherald;

namespace {

Operator annihilation(int d) {
  Operator a = Operator::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

// exp(zeta^*/2 a^2 - zeta/2 a^dag^2) on a large space
Operator dense_squeeze(Complex zeta, int d) {
  const Operator a = annihilation(d);
  return Operator(0.5 * std::conj(zeta) * a * a - 0.5 * zeta * a.adjoint() * a.adjoint()).exp();
}

Operator dense_displacement(Complex alpha, int d) {
  const Operator a = annihilation(d);
  return Operator(alpha * a.adjoint() - std::conj(alpha) * a).exp();
}

double overlap(const Ket& a, const Ket& b) { return std::norm(a.normalized().dot(b.normalized())); }

}  // namespace

TEST_CASE("squeezed coherent state against D(alpha) S(zeta)|0>") {
  const int d = 200, cutoff = 80;
  for (const SqueezedCoherentParams p : {SqueezedCoherentParams{0.5, 0.3, 0.8, 1.1}, SqueezedCoherentParams{1.0, 4.0, 1.5, 5.5},
                                         SqueezedCoherentParams{1e-6, 2.0, 0.4, 0.2}, SqueezedCoherentParams{0.2, 6.0, 0.0, 0.0}}) {
    const Ket ref = (dense_displacement(p.alpha(), d) * dense_squeeze(p.zeta(), d)).col(0).head(cutoff + 1);
    const Ket ket = squeezed_coherent(p, cutoff);
    CHECK(overlap(ket, ref) >= 1 - 1e-10);
    // the unnormalized expansion carries the exact amplitudes
    CHECK((squeezed_coherent_amplitudes(p, cutoff) - ref).norm() < 1e-10);
  }
  // S(zeta) D(alpha) is a different state
  const SqueezedCoherentParams p{0.5, 0.3, 0.8, 1.1};
  const Ket swapped = (dense_squeeze(p.zeta(), d) * dense_displacement(p.alpha(), d)).col(0).head(cutoff + 1);
  CHECK(overlap(squeezed_coherent(p, cutoff), swapped) < 0.99);
}

TEST_CASE("squeezed coherent limits") {
  const Ket vac = squeezed_coherent({0, 0, 0, 0}, 10);
  CHECK(std::abs(vac(0) - 1.0) < 1e-15);
  const Ket coh = squeezed_coherent({0, 0, 1, 0}, 30);
  CHECK(std::abs(coh(0) - 0.60653065971263342) < 1e-12);
  for (int n = 0; n <= 10; ++n) CHECK(std::abs(coh(n) - std::exp(-0.5 - 0.5 * std::lgamma(n + 1.0))) < 1e-12);
  CHECK(is_normalized(squeezed_coherent({1.0, 1.0, 3.0, 2.0}, 120), 1e-12));
  CHECK_THROWS_AS(squeezed_coherent({0.3, 0, 4.0, 0}, 10), CutoffError);
}

TEST_CASE("squeeze operator matrix") {
  CHECK((squeeze_operator_matrix(0, 12) - Operator::Identity(13, 13)).norm() < 1e-15);

  const double r = 0.6;
  const Operator s = squeeze_operator_matrix(r, 40);
  for (int k = 0; 2 * k <= 40; ++k) {
    const double ref = std::exp(0.5 * std::lgamma(2 * k + 1.0) - std::lgamma(k + 1.0)) *
                       std::pow(-std::tanh(r) / 2, k) / std::sqrt(std::cosh(r));
    CHECK(std::abs(s(2 * k, 0) - ref) < 1e-13);
  }
  for (int m = 0; m <= 40; ++m) {
    for (int n = 0; n <= 40; ++n) {
      if ((m - n) % 2) CHECK(s(m, n) == Complex(0));
    }
  }

  const Complex zeta = std::polar(0.6, 1.3);
  const Operator exact = dense_squeeze(zeta, 250);
  const Operator closed = squeeze_operator_matrix(zeta, 40);
  CHECK((closed.topLeftCorner(16, 16) - exact.topLeftCorner(16, 16)).norm() < 1e-10);
  // unitary on the block the truncation supports
  const Operator block = closed.leftCols(3);
  CHECK((block.adjoint() * block - Operator::Identity(3, 3)).norm() < 1e-8);

  CHECK_THROWS_AS(squeeze_operator_matrix(2.5, 40), std::invalid_argument);
  CHECK_THROWS_AS(squeeze_operator_matrix(1.5, 10), CutoffError);
}

TEST_CASE("binomial states") {
  CHECK(std::abs(binomial_state(1, 3, 10)(3) - 1.0) < 1e-15);
  CHECK(std::abs(binomial_state(0, 3, 10)(0) - 1.0) < 1e-15);
  const Ket half = binomial_state(0.5, 1, 4);
  CHECK(std::abs(half(0) - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(half(1) - 1 / std::sqrt(2.0)) < 1e-15);
  const Ket b = binomial_state(0.3, 7, 40);
  CHECK(std::abs(b(0) - std::pow(0.7, 3.5)) < 1e-14);
  CHECK(b.tail(40 - 7).norm() == 0);
  CHECK(is_normalized(b, 1e-12));
  CHECK_THROWS_AS(binomial_state(0.3, 11, 10), std::invalid_argument);
  CHECK_THROWS_AS(binomial_state(1.2, 3, 10), std::invalid_argument);
}

TEST_CASE("negative binomial states") {
  const Ket g = negative_binomial_state(0.5, 1, 0, 60);
  for (int n = 0; n <= 20; ++n) CHECK(std::abs(g(n) - std::sqrt(0.75) * std::pow(0.5, n)) < 1e-12);
  const Ket g65 = negative_binomial_state(0.65, 1, 0, 90);
  for (int n = 0; n <= 20; ++n) CHECK(std::abs(g65(n) - std::sqrt(1 - 0.65 * 0.65) * std::pow(0.65, n)) < 1e-12);
  CHECK(std::abs(negative_binomial_state(0, 5, 0, 10)(0) - 1.0) < 1e-15);

  const double varphi = std::numbers::pi / 4;
  const Ket nb = negative_binomial_state(0.5, 5, varphi, 40);
  CHECK(is_normalized(nb, 1e-12));
  for (int n = 1; n <= 20; ++n) {
    CHECK(std::abs(std::remainder(std::arg(nb(n)) - n * varphi, 2 * std::numbers::pi)) < 1e-10);
  }
  CHECK_THROWS_AS(negative_binomial_state(0.75, 6, 0, 40), CutoffError);
  CHECK(is_normalized(negative_binomial_state(0.75, 6, 0, 80), 1e-12));
}

TEST_CASE("amplitude squeezed states") {
  CHECK(std::norm(amplitude_squeezed_state(1, 0.01, 3, 30)(3)) >= 1 - 1e-6);
  const Ket wide = amplitude_squeezed_state(1, 100, 1, 30);
  const Ket coherent = squeezed_coherent({0, 0, 1, 0}, 30);
  CHECK(std::norm(wide.dot(coherent)) >= 0.999);

  Ket direct(31);
  for (int n = 0; n <= 30; ++n) {
    direct(n) = std::sqrt(2 * std::numbers::pi) / std::sqrt(std::tgamma(n + 1.0)) * std::exp(-(1.0 - n) * (1.0 - n) / 2);
  }
  CHECK((amplitude_squeezed_state(1, 1, 1, 30) - direct.normalized()).norm() < 1e-13);
}

TEST_CASE("resource states") {
  CHECK(std::abs(resource_state(0, 0, 10)(0) - 1.0) < 1e-14);
  Ket ref = Ket::Zero(11);
  ref(0) = 1;
  ref(1) = 0.1 * 3 / (2 * std::sqrt(2.0));
  ref(3) = 0.1 * std::sqrt(3.0) / 2;
  CHECK((resource_state(0, 0.1, 10) - ref.normalized()).norm() < 1e-14);

  const Ket rs = resource_state(0.6, 0.03, 70);
  CHECK(is_normalized(rs, 1e-12));
  Ket seed = Ket::Zero(251);
  seed.head(4) = ref.head(4);
  seed(1) *= 0.3;
  seed(3) *= 0.3;
  const Ket exact = (dense_squeeze(0.6, 251) * seed.normalized()).head(71);
  CHECK(overlap(rs, exact) >= 1 - 1e-10);
}

TEST_CASE("ad hoc superpositions") {
  const std::vector<Complex> a{1, 1}, b{0, 2, 1}, c{1}, zero{0, 0};
  const Ket s = adhoc_superposition(a, 5);
  CHECK(std::abs(s(0) - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(s(1) - 1 / std::sqrt(2.0)) < 1e-15);
  const Ket t = adhoc_superposition(b, 5);
  CHECK(std::abs(t(1) - 2 / std::sqrt(5.0)) < 1e-15);
  CHECK(std::abs(t(2) - 1 / std::sqrt(5.0)) < 1e-15);
  CHECK(std::abs(adhoc_superposition(c, 5)(0) - 1.0) < 1e-15);
  CHECK_THROWS_AS(adhoc_superposition(zero, 5), std::invalid_argument);
  CHECK_THROWS_AS(adhoc_superposition(b, 1), std::invalid_argument);
}

TEST_CASE("target dispatch and labels") {
  CHECK(describe(BinomialTarget{0.3, 7}) == "|0.3,7>_B");
  CHECK(describe(ResourceTarget{0.6, 0.03}) == "|Psi(0.6,0.03)>_RS");
  const TargetSpec spec = NegativeBinomialTarget{0.65, 1, 0};
  CHECK((make_target(spec, 90) - negative_binomial_state(0.65, 1, 0, 90)).norm() == 0);
}
