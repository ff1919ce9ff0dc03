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

TEST_CASE("purification") {
  // pure input: the purifying factor is a scalar
  CVec e0(2);
  e0 << 1.0, 0.0;
  auto psi = quantum::purify(quantum::DensityMatrix::from_pure(e0));
  CHECK(psi.dim() == 2);

  // completely mixed qubit purifies to a maximally entangled vector
  auto mes = quantum::purify(
      quantum::DensityMatrix(quantum::completely_mixed(2)));
  auto schmidt_mes = quantum::schmidt(mes.amplitudes(), 2, 2);
  CHECK(schmidt_mes.coefficients[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(schmidt_mes.coefficients[1] == doctest::Approx(1.0 / std::sqrt(2.0)));

  Mat rho = Mat::Zero(2, 2);
  rho(0, 0) = 0.8;
  rho(1, 1) = 0.2;
  auto p = quantum::purify(quantum::DensityMatrix(rho));
  auto sd = quantum::schmidt(p.amplitudes(), 2, 2);
  CHECK(sd.coefficients[0] == doctest::Approx(std::sqrt(0.8)));
  CHECK(sd.coefficients[1] == doctest::Approx(std::sqrt(0.2)));

  // tracing out the second factor recovers the state
  for (int t = 0; t < 20; ++t) {
    auto rho_r = quantum::random_density(3, 2 + t % 2, derive_seed(2, t));
    auto pur = quantum::purify(rho_r);
    int rank = pur.dim() / 3;
    Mat back = mat::partial_trace(pur.projector(), {3, rank}, {0});
    CHECK(mat::max_abs(back - rho_r.matrix()) <= 1e-9);
  }
}

TEST_CASE("schmidt decomposition") {
  CVec prod(6);
  prod << 0.6, 0.0, 0.8, 0.0, 0.0, 0.0;  // (0.6,0.8,0) (x) (1,0)
  prod.normalize();
  auto sd = quantum::schmidt(prod, 3, 2);
  CHECK(sd.rank == 1);

  auto mes = quantum::maximally_entangled_vector(3);
  auto sd3 = quantum::schmidt(mes, 3, 3);
  for (int i = 0; i < 3; ++i)
    CHECK(sd3.coefficients[i] == doctest::Approx(1.0 / std::sqrt(3.0)));

  auto psi = quantum::random_pure(6, 99).amplitudes();
  auto sd2 = quantum::schmidt(psi, 2, 3);
  CVec rebuilt = sd2.reconstruct(2, 3);
  CHECK((rebuilt - psi).norm() <= 1e-10);

  // marginals share the squared coefficients
  Mat full = psi * psi.adjoint();
  auto sa = mat::eig_hermitian(mat::partial_trace(full, {2, 3}, {0}));
  for (int i = 0; i < 2; ++i)
    CHECK(sa.eigenvalues[i] ==
          doctest::Approx(sd2.coefficients[i] * sd2.coefficients[i]));

  CHECK_THROWS_AS(quantum::schmidt(psi, 2, 2), DimMismatchError);
}

TEST_CASE("channel application and adjoints") {
  auto ident = quantum::identity_channel(2);
  Mat x = Mat::Zero(2, 2);
  x(0, 0) = 0.4;
  x(1, 1) = 0.6;
  CHECK(mat::max_abs(ident.apply(x) - x) <= 1e-15);

  auto depol = quantum::depolarizing_channel(2, 1.0);
  auto rho = quantum::random_density(2, 2, 1);
  CHECK(mat::max_abs(depol.apply(rho.matrix()) -
                     quantum::completely_mixed(2)) <= 1e-12);

  // partial trace as a channel agrees with the direct computation
  std::vector<Mat> kraus;
  for (int j = 0; j < 2; ++j) {
    Mat k = Mat::Zero(2, 4);
    for (int i = 0; i < 2; ++i) k(i, 2 * i + j) = 1.0;
    kraus.push_back(k);
  }
  quantum::QuantumChannel trace_b(kraus);
  auto joint = quantum::random_density(4, 4, 5);
  CHECK(mat::max_abs(trace_b.apply(joint.matrix()) -
                     mat::partial_trace(joint.matrix(), {2, 2}, {0})) <=
        1e-12);

  // adjoint pairing and unitality
  auto ch = quantum::random_channel(3, 2, 2, 7);
  Mat a = quantum::random_density(3, 3, 8).matrix();
  Mat y(2, 2);
  y << 0.3, mat::cplx(0.1, 0.2), mat::cplx(0.1, -0.2), 0.7;
  double lhs = (ch.apply(a).adjoint() * y).trace().real();
  double rhs = (a.adjoint() * ch.adjoint_apply(y)).trace().real();
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  CHECK(mat::max_abs(ch.adjoint_apply(Mat::Identity(2, 2)) -
                     Mat::Identity(3, 3)) <= 1e-10);
}

TEST_CASE("random fixtures are valid and deterministic") {
  auto rho = quantum::random_density(4, 1, 42);
  auto s = mat::eig_hermitian(rho.matrix());
  CHECK(s.eigenvalues[0] == doctest::Approx(1.0));

  auto unitary_like = quantum::random_channel(3, 3, 1, 42);
  CHECK(unitary_like.env_dim() == 1);
  Mat u = unitary_like.kraus().front();
  CHECK(mat::max_abs(u.adjoint() * u - Mat::Identity(3, 3)) <= 1e-10);

  auto a = quantum::random_density(3, 2, 2024);
  auto b = quantum::random_density(3, 2, 2024);
  CHECK(mat::max_abs(a.matrix() - b.matrix()) == 0.0);
  auto pa = quantum::random_pure(5, 11);
  auto pb = quantum::random_pure(5, 11);
  CHECK((pa.amplitudes() - pb.amplitudes()).norm() == 0.0);

  CHECK_THROWS_AS(quantum::random_density(2, 3, 1), BadParamsError);
  CHECK_THROWS_AS(quantum::random_channel(4, 2, 1, 1), BadParamsError);
}

TEST_CASE("measurement channels") {
  std::vector<Mat> comp{Mat::Zero(2, 2), Mat::Zero(2, 2)};
  comp[0](0, 0) = 1.0;
  comp[1](1, 1) = 1.0;
  quantum::Povm basis(comp);
  auto mc = quantum::measurement_channel(basis);
  Mat rho = Mat::Zero(2, 2);
  rho(0, 0) = 0.8;
  rho(1, 1) = 0.2;
  CHECK(mat::max_abs(mc.apply(rho) - rho) <= 1e-12);

  quantum::Povm trivial({Mat::Identity(2, 2)});
  auto mt = quantum::measurement_channel(trivial);
  Mat out = mt.apply(rho);
  CHECK(out.rows() == 1);
  CHECK(out(0, 0).real() == doctest::Approx(1.0));

  // c-q structure of a measurement on half of a bipartite state
  auto joint = quantum::random_density(4, 4, 31);
  auto [sigma_xb, dims] =
      quantum::apply_channel_at(joint.matrix(), {2, 2}, 0, mc);
  Mat expect = Mat::Zero(4, 4);
  for (int xv = 0; xv < 2; ++xv) {
    Mat lifted = mat::embed(comp[xv], {2, 2}, {0});
    Mat omega = mat::partial_trace(lifted * joint.matrix() * lifted, {2, 2},
                                   {1});
    Mat xx = Mat::Zero(2, 2);
    xx(xv, xv) = 1.0;
    expect += mat::tensor(xx, omega);
  }
  CHECK(mat::max_abs(sigma_xb - expect) <= 1e-10);
}

TEST_CASE("recovery map") {
  // unitary channels are undone exactly
  Rng rng(55);
  Mat u = quantum::random_unitary(3, rng);
  auto uc = quantum::unitary_channel(u);
  Mat sigma = quantum::random_density(3, 3, 56).matrix();
  auto rec = quantum::petz_recovery(sigma, uc);
  Mat rho = quantum::random_density(3, 3, 57).matrix();
  CHECK(mat::max_abs(rec.apply(uc.apply(rho)) - rho) <= 1e-9);

  // pinching in the reference eigenbasis leaves the reference recoverable
  auto pinch_ch = quantum::pinching_channel(sigma);
  auto rec2 = quantum::petz_recovery(sigma, pinch_ch);
  CHECK(mat::max_abs(rec2.apply(pinch_ch.apply(sigma)) - sigma) <= 1e-8);

  // the defining identity on random pairs
  for (int t = 0; t < 20; ++t) {
    Mat s = quantum::random_density(3, 3, derive_seed(60, t)).matrix();
    auto lam = quantum::random_channel(3, 3, 2, derive_seed(61, t));
    auto r = quantum::petz_recovery(s, lam);
    CHECK(mat::max_abs(r.apply(lam.apply(s)) - s) <= 1e-8);
  }
}

TEST_CASE("entanglement fidelity") {
  auto rho = quantum::random_density(3, 3, 71);
  CHECK(quantum::entanglement_fidelity(rho, quantum::identity_channel(3)) ==
        doctest::Approx(1.0));

  // equals the output fidelity exactly on pure inputs
  auto pure = quantum::DensityMatrix::from_pure(
      quantum::random_pure(2, 72).amplitudes());
  auto noisy = quantum::depolarizing_channel(2, 0.4);
  double fe = quantum::entanglement_fidelity(pure, noisy);
  double f = div::fidelity(pure.matrix(), noisy.apply(pure.matrix()));
  CHECK(fe == doctest::Approx(f).epsilon(1e-9));

  // strictly below for the completely mixed state
  quantum::DensityMatrix mixed(quantum::completely_mixed(2));
  double fe_mixed = quantum::entanglement_fidelity(mixed, noisy);
  double f_mixed = div::fidelity(mixed.matrix(), noisy.apply(mixed.matrix()));
  CHECK(fe_mixed < f_mixed - 1e-6);

  // agreement with the purification-based formula
  auto psi = quantum::purify(rho);
  int rank = psi.dim() / 3;
  auto ch = quantum::random_channel(3, 3, 2, 73);
  auto [evolved, dims] =
      quantum::apply_channel_at(psi.projector(), {3, rank}, 0, ch);
  double overlap =
      (psi.amplitudes().adjoint() * evolved * psi.amplitudes()).real()(0, 0);
  CHECK(quantum::entanglement_fidelity(rho, ch) ==
        doctest::Approx(std::sqrt(std::max(overlap, 0.0))).epsilon(1e-9));
}

TEST_CASE("stinespring dilation") {
  for (int t = 0; t < 20; ++t) {
    auto ch = quantum::random_channel(2 + t % 2, 2, 2, derive_seed(80, t));
    Mat v = ch.stinespring();
    CHECK(mat::max_abs(v.adjoint() * v -
                       Mat::Identity(ch.in_dim(), ch.in_dim())) <= 1e-10);
    Mat rho = quantum::random_density(ch.in_dim(), ch.in_dim(),
                                      derive_seed(81, t))
                  .matrix();
    Mat dil = v * rho * v.adjoint();
    Mat traced = mat::partial_trace(dil, {ch.env_dim(), ch.out_dim()}, {1});
    CHECK(mat::max_abs(traced - ch.apply(rho)) <= 1e-9);
  }
}
