// Copyright 2026 The qdiv authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qdiv/divergence.hpp"
#include "qdiv/quantum.hpp"

using namespace qdiv;
using mat::CVec;
using mat::Mat;

namespace {

Mat diag2(double a, double b) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

Mat counterexample_sigma(double c) {
  Mat m(2, 2);
  m << 1.0, c, c, 1.0;
  return m;
}

Mat random_full_state(int d, std::uint64_t seed) {
  return quantum::random_density(d, d, seed).matrix();
}

// canonical purification with the purifying factor padded to full dimension
CVec padded_purification(const Mat& rho) {
  auto s = mat::eig_hermitian(rho);
  int d = s.dim();
  CVec psi = CVec::Zero(static_cast<long>(d) * d);
  for (int i = 0; i < d; ++i) {
    double lam = std::max(s.eigenvalues[i], 0.0);
    for (int a = 0; a < d; ++a)
      psi[static_cast<long>(a) * d + i] +=
          std::sqrt(lam) * s.eigenvectors(a, i);
  }
  return psi;
}

}  // namespace

TEST_CASE("relative entropy and information variance") {
  Mat rho = diag2(0.8, 0.2);
  Mat sigma = diag2(0.5, 0.5);
  CHECK(div::qre(rho, sigma).value == doctest::Approx(0.278071905112638));
  CHECK(div::qiv(rho, sigma) == doctest::Approx(0.64));
  CHECK(div::qre(sigma, sigma).value == doctest::Approx(0.0));

  // support violation is an infinite value, not an error
  auto inf = div::qre(diag2(1, 0), diag2(0, 1));
  CHECK_FALSE(inf.is_finite);
  CHECK(std::isinf(inf.or_inf()));

  // Klein: nonnegative against normalized second argument, zero only at equality
  for (int t = 0; t < 30; ++t) {
    Mat a = random_full_state(3, derive_seed(1, t));
    Mat b = random_full_state(3, derive_seed(2, t));
    CHECK(div::qre(a, b).value >= -1e-10);
    if (div::trace_distance(a, b) > 1e-3) CHECK(div::qre(a, b).value > 1e-7);
  }
}

TEST_CASE("relative Renyi entropy") {
  Mat rho = diag2(0.8, 0.2);
  Mat sigma = diag2(0.5, 0.5);
  CHECK(div::rre(rho, sigma, 2.0).value ==
        doctest::Approx(0.443606651475615));

  // limit toward the relative entropy
  double base = div::qre(rho, sigma).value;
  CHECK(std::abs(div::rre(rho, sigma, 1.0 + 1e-4).value - base) <= 1e-3);
  CHECK(std::abs(div::rre(rho, sigma, 1.0 - 1e-4).value - base) <= 1e-3);

  // order zero is the support overlap
  Mat ce = counterexample_sigma(0.5);
  CHECK(div::rre(diag2(1, 0), ce, 0.0).value == doctest::Approx(0.0));
  CHECK(div::rre(diag2(1, 0), diag2(0.3, 0.7), 0.0).value ==
        doctest::Approx(-std::log2(0.3)));
}

TEST_CASE("sandwiched divergence") {
  Mat rho = diag2(0.8, 0.2);
  Mat sigma = diag2(0.5, 0.5);
  // commuting inputs match the non-sandwiched value exactly
  for (double alpha : {0.3, 0.7, 2.0, 5.0})
    CHECK(std::abs(div::srd(rho, sigma, alpha).or_inf() -
                   div::rre(rho, sigma, alpha).or_inf()) <= 1e-10);

  // closed-form spectrum of the sandwiched operator for the pinned pair
  Mat r1 = diag2(1.0, 0.0);
  Mat ce = counterexample_sigma(0.5);
  for (double alpha : {0.3, 0.6, 0.8}) {
    double g = (1.0 - alpha) / (2.0 * alpha);
    double lam1 = 0.5 * (std::pow(1.5, 2 * g) + std::pow(0.5, 2 * g));
    double expect = (alpha / (alpha - 1.0)) * std::log2(lam1);
    CHECK(div::srd(r1, ce, alpha).value == doctest::Approx(expect));
  }
  CHECK(div::srd(r1, ce, 0.5).value == doctest::Approx(0.0));

  // never exceeds the non-sandwiched family
  for (int t = 0; t < 100; ++t) {
    Mat a = random_full_state(3, derive_seed(3, t));
    Mat b = random_full_state(3, derive_seed(4, t));
    for (double alpha : {0.3, 0.7, 2.0, 5.0})
      CHECK(div::srd(a, b, alpha).or_inf() <=
            div::rre(a, b, alpha).or_inf() + 1e-9);
  }

  // support case: alpha > 1 needs containment
  CHECK_FALSE(div::srd(diag2(0.5, 0.5), diag2(1, 0), 2.0).is_finite);
  CHECK(div::srd(diag2(1, 0), diag2(1, 0), 2.0).is_finite);
}

TEST_CASE("order-zero limit of the sandwiched divergence") {
  // the support-mismatch pair lands strictly below the order-zero value
  Mat r1 = diag2(1.0, 0.0);
  Mat ce = counterexample_sigma(0.5);
  CHECK(std::abs(div::srd_zero_limit(r1, ce) - (-std::log2(1.5))) <= 1e-3);
  CHECK(div::rre(r1, ce, 0.0).value == doctest::Approx(0.0));

  // normalized rank-one variant: the limit sits strictly below the
  // order-zero divergence (here 0 against 1)
  Mat plus = counterexample_sigma(1.0) / 2.0;
  CHECK(std::abs(div::srd_zero_limit(r1, plus)) <= 1e-3);
  CHECK(div::rre(r1, plus, 0.0).value == doctest::Approx(1.0));

  // equal supports with normalized sigma collapse to zero
  for (int t = 0; t < 20; ++t) {
    int d = 2 + t % 3;
    Mat a = random_full_state(d, derive_seed(5, t));
    Mat b = random_full_state(d, derive_seed(6, t));
    CHECK(std::abs(div::srd_zero_limit(a, b)) <= 1e-3);
  }

  // unnormalized sigma picks up the log of its trace
  Mat b2 = 1.7 * random_full_state(3, 1234);
  Mat a2 = random_full_state(3, 4321);
  CHECK(std::abs(div::srd_zero_limit(a2, b2) + std::log2(1.7)) <= 1e-3);

  // route cross-validation in the overlap domain: near-degenerate sigma
  // keeps the direct spectral route inside double range even at the
  // extrapolation orders, where both routes must coincide
  for (int t = 0; t < 20; ++t) {
    int d = 2 + t % 3;
    Rng rng(derive_seed(30, t));
    Mat g = quantum::ginibre(d, d, rng);
    // eigenvalues pinned near one so sigma^gamma stays in range at the
    // extrapolation orders
    Mat sigma = Mat::Identity(d, d) + 1e-5 * (g + g.adjoint());
    Mat rho = quantum::random_density(d, t % 2 ? d : d - 1, derive_seed(31, t))
                  .matrix();
    double direct = 2.0 * div::srd(rho, sigma, 1e-4).or_inf() -
                    div::srd(rho, sigma, 2e-4).or_inf();
    double limit = div::srd_zero_limit(rho, sigma);
    CHECK(std::abs(direct - limit) <= 1e-3);
  }

  // the full analytic family of the rank-one example
  for (double c : {0.1, 0.5, 0.9}) {
    CHECK(std::abs(div::srd_zero_limit(r1, counterexample_sigma(c)) +
                   std::log2(1.0 + c)) <= 1e-3);
  }
}

TEST_CASE("alpha-z family") {
  for (int t = 0; t < 40; ++t) {
    Mat a = random_full_state(3, derive_seed(7, t));
    Mat b = random_full_state(3, derive_seed(8, t));
    for (double alpha : {0.6, 2.0}) {
      CHECK(std::abs(div::alpha_z(a, b, alpha, 1.0).value -
                     div::rre(a, b, alpha).value) <= 1e-10);
      CHECK(std::abs(div::alpha_z(a, b, alpha, alpha).value -
                     div::srd(a, b, alpha).value) <= 1e-10);
    }
  }
  // commuting inputs are z-independent
  Mat rho = diag2(0.8, 0.2);
  Mat sigma = diag2(0.5, 0.5);
  double ref = div::alpha_z(rho, sigma, 2.0, 1.0).value;
  for (double z : {0.5, 1.5, 3.0})
    CHECK(div::alpha_z(rho, sigma, 2.0, z).value == doctest::Approx(ref));
}

TEST_CASE("min and max relative entropies") {
  Mat rho = diag2(0.8, 0.2);
  Mat sigma = diag2(0.5, 0.5);
  CHECK(div::dmin(rho, rho) == doctest::Approx(0.0));
  CHECK(div::dmax(rho, rho).value == doctest::Approx(0.0));
  CHECK(div::dmax(rho, sigma).value == doctest::Approx(std::log2(1.6)));
  double f = std::sqrt(0.4) + std::sqrt(0.1);
  CHECK(div::dmin(rho, sigma) == doctest::Approx(-2.0 * std::log2(f)));

  for (int t = 0; t < 30; ++t) {
    Mat a = random_full_state(3, derive_seed(9, t));
    Mat b = random_full_state(3, derive_seed(10, t));
    CHECK(std::abs(div::dmin(a, b) - div::srd(a, b, 0.5).value) <= 1e-10);
    CHECK(std::abs(div::srd(a, b, 1000.0).value - div::dmax(a, b).value) <=
          1e-2);
  }
  CHECK_FALSE(div::dmax(diag2(0.5, 0.5), diag2(1, 0)).is_finite);
}

TEST_CASE("fidelity and trace distance") {
  Mat rho = diag2(0.8, 0.2);
  Mat sigma = diag2(0.5, 0.5);
  CHECK(div::fidelity(rho, rho) == doctest::Approx(1.0));
  CHECK(div::trace_distance(rho, rho) == doctest::Approx(0.0));
  CHECK(div::fidelity(rho, sigma) ==
        doctest::Approx(std::sqrt(0.4) + std::sqrt(0.1)));
  CHECK(div::trace_distance(rho, sigma) == doctest::Approx(0.3));
  CHECK(div::fidelity(diag2(1, 0), diag2(0, 1)) == doctest::Approx(0.0));
  CHECK(div::trace_distance(diag2(1, 0), diag2(0, 1)) == doctest::Approx(1.0));

  // maximal purification overlap reproduces the fidelity
  for (int t = 0; t < 30; ++t) {
    Mat a = random_full_state(2, derive_seed(11, t));
    Mat b = random_full_state(2, derive_seed(12, t));
    CVec pa = padded_purification(a);
    CVec pb = padded_purification(b);
    Mat x = Mat::Zero(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int v = 0; v < 2; ++v)
          x(i, j) += std::conj(pa[static_cast<long>(v) * 2 + i]) *
                     pb[static_cast<long>(v) * 2 + j];
    double best = mat::schatten_norm(x, 1.0);
    CHECK(std::abs(best - div::fidelity(a, b)) <= 1e-8);
  }

  // metric properties of the trace distance
  Mat a = random_full_state(3, 1);
  Mat b = random_full_state(3, 2);
  Mat c = random_full_state(3, 3);
  CHECK(div::trace_distance(a, b) == doctest::Approx(div::trace_distance(b, a)));
  CHECK(div::trace_distance(a, c) <=
        div::trace_distance(a, b) + div::trace_distance(b, c) + 1e-12);

  // non-decreasing under partial trace
  Mat ab1 = random_full_state(4, 21);
  Mat ab2 = random_full_state(4, 22);
  CHECK(div::fidelity(mat::partial_trace(ab1, {2, 2}, {0}),
                      mat::partial_trace(ab2, {2, 2}, {0})) >=
        div::fidelity(ab1, ab2) - 1e-10);
}

TEST_CASE("hypothesis testing relative entropy") {
  Mat rho = diag2(0.8, 0.2);
  Mat sigma = diag2(0.5, 0.5);
  CHECK(div::hypothesis_testing_re(rho, sigma, 0.2) == doctest::Approx(1.0));

  // zero error reduces to the order-zero divergence
  Mat low = diag2(1.0, 0.0);
  CHECK(div::hypothesis_testing_re(low, sigma, 0.0) ==
        doctest::Approx(div::rre(low, sigma, 0.0).value));

  // randomization interpolates between thresholds: eps = 0.1 keeps part of
  // the second atom
  double dh01 = div::hypothesis_testing_re(rho, sigma, 0.1);
  CHECK(dh01 == doctest::Approx(-std::log2(0.5 + 0.5 * (0.1 / 0.2))));
}

TEST_CASE("information spectrum relative entropy") {
  Mat pi2 = quantum::completely_mixed(2);
  double v = div::info_spectrum_ds(pi2, pi2, 0.5);
  CHECK(v < 0.0);
  CHECK(v >= -1.1e-4);

  Mat rho = diag2(0.8, 0.2);
  Mat sigma = diag2(0.5, 0.5);
  double v2 = div::info_spectrum_ds(rho, sigma, 0.5);
  CHECK(v2 < 0.678072);
  CHECK(v2 >= 0.678072 - 2.1e-4);

  // the positive-part variant is sandwiched below
  for (int t = 0; t < 10; ++t) {
    Mat a = random_full_state(2, derive_seed(13, t));
    Mat b = random_full_state(2, derive_seed(14, t));
    double eps = 0.3;
    CHECK(div::underline_ds(a, b, eps) <=
          div::info_spectrum_ds(a, b, eps) + 2e-4);
  }

  // a condition satisfied at the grid top cannot be bracketed
  CHECK_THROWS_AS(div::info_spectrum_ds(pi2, pi2, 1.0), GridExhaustedError);
}

TEST_CASE("positive-part information spectrum entropies") {
  Mat rho = diag2(0.8, 0.2);
  Mat sigma = diag2(0.5, 0.5);
  CHECK(div::underline_ds(rho, sigma, 0.2) == doctest::Approx(std::log2(0.2)));
  CHECK(div::underline_ds(rho, rho, 0.5) == doctest::Approx(-1.0));

  for (int t = 0; t < 30; ++t) {
    Mat a = random_full_state(3, derive_seed(15, t));
    Mat b = random_full_state(3, derive_seed(16, t));
    double eps = 0.3, delta = 0.1;
    double uds = div::underline_ds(a, b, eps);
    CHECK(std::abs(uds - div::overline_ds(a, b, 1.0 - eps)) <= 1e-8);
    CHECK(div::hypothesis_testing_re(a, b, eps - delta) + std::log2(delta) <=
          uds + 1e-8);
    CHECK(uds <= div::hypothesis_testing_re(a, b, eps) + 1e-8);
  }
}

TEST_CASE("equality condition across channels") {
  Mat rho = random_full_state(3, 101);
  Mat sigma = random_full_state(3, 102);

  // unitary evolution: no gap, vanishing residual
  Rng rng(103);
  auto uc = quantum::unitary_channel(quantum::random_unitary(3, rng));
  for (double alpha : {0.6, 2.0}) {
    auto [gap, residual] = div::dpi_gap_and_residual(rho, sigma, uc, alpha);
    CHECK(std::abs(gap) <= 1e-9);
    CHECK(residual <= 1e-10);
  }

  // tensoring with a fixed state preserves the divergence
  Mat tau = random_full_state(2, 104);
  auto st = mat::eig_hermitian(tau);
  std::vector<Mat> kraus;
  for (int i = 0; i < 2; ++i) {
    Mat k = Mat::Zero(6, 3);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 2; ++b)
        k(a * 2 + b, a) = std::sqrt(std::max(st.eigenvalues[i], 0.0)) *
                          st.eigenvectors(b, i);
    kraus.push_back(k);
  }
  quantum::QuantumChannel attach(kraus);
  auto [gap_t, residual_t] = div::dpi_gap_and_residual(rho, sigma, attach, 2.0);
  CHECK(std::abs(gap_t) <= 1e-9);
  CHECK(residual_t <= 1e-8);

  // noisy channels on non-commuting pairs separate strictly
  auto noisy = quantum::depolarizing_channel(3, 0.5);
  auto [gap_n, residual_n] = div::dpi_gap_and_residual(rho, sigma, noisy, 2.0);
  CHECK(gap_n > 1e-3);
  CHECK(residual_n > 1e-3);
}

TEST_CASE("variational form of the trace functional") {
  Mat rho = random_full_state(3, 201);
  CHECK(mat::max_abs(div::frank_lieb_optimizer(rho, rho, 2.0) -
                     Mat::Identity(3, 3)) <= 1e-8);
  CHECK(div::frank_lieb_objective(Mat::Identity(3, 3), rho, rho, 2.0) ==
        doctest::Approx(1.0));

  // commuting case: the optimizer is the diagonal power of the ratio
  Mat p = diag2(0.8, 0.2);
  Mat q = diag2(0.5, 0.5);
  for (double alpha : {0.75, 2.0}) {
    Mat h = div::frank_lieb_optimizer(p, q, alpha);
    Mat expect = Mat::Zero(2, 2);
    for (int i = 0; i < 2; ++i)
      expect(i, i) = std::pow(p(i, i).real() / q(i, i).real(), alpha - 1.0);
    CHECK(mat::max_abs(h - expect) <= 1e-10);
  }

  // stationarity: the objective meets the trace functional and perturbations
  // never improve it for alpha > 1
  Mat sigma = random_full_state(3, 202);
  Mat h_opt = div::frank_lieb_optimizer(rho, sigma, 2.0);
  double q_val = div::srd_q(rho, sigma, 2.0);
  CHECK(std::abs(div::frank_lieb_objective(h_opt, rho, sigma, 2.0) - q_val) <=
        1e-8);
  Rng rng(203);
  for (int t = 0; t < 100; ++t) {
    Mat g = quantum::ginibre(3, 3, rng);
    Mat pert = (g + g.adjoint()) / 2.0;
    pert *= 1e-3 / std::max(1.0, mat::max_abs(pert));
    double f2 = div::frank_lieb_objective(h_opt + pert, rho, sigma, 2.0);
    CHECK(f2 <= q_val + 1e-9);
  }
}
