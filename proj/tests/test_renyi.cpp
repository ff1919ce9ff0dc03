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

#include "oracles.hpp"
#include "qdiv/converse.hpp"
#include "qdiv/divergence.hpp"
#include "qdiv/quantum.hpp"
#include "qdiv/renyi.hpp"

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

}  // namespace

TEST_CASE("Renyi entropy") {
  CVec pure(3);
  pure << 1.0, 0.0, 0.0;
  Mat pp = pure * pure.adjoint();
  for (double alpha : {0.0, 0.5, 1.0, 2.0, 10.0})
    CHECK(renyi::renyi_entropy(pp, alpha) == doctest::Approx(0.0));

  for (double alpha : {0.0, 0.5, 1.0, 2.0, 10.0})
    CHECK(renyi::renyi_entropy(quantum::completely_mixed(4), alpha) ==
          doctest::Approx(2.0));

  CHECK(renyi::renyi_entropy(diag2(0.8, 0.2), 2.0) ==
        doctest::Approx(-std::log2(0.68)));
  CHECK(std::abs(renyi::renyi_entropy(diag2(0.8, 0.2), 1.0 + 1e-4) -
                 renyi::renyi_entropy(diag2(0.8, 0.2), 1.0)) <= 1e-3);
}

TEST_CASE("conditional Renyi entropy") {
  renyi::OptimizerParams params;
  params.seed = 7;

  // product states: the extra factor changes nothing
  Mat rho_ab = quantum::random_density(4, 4, 11).matrix();
  Mat sigma_c = quantum::random_density(2, 2, 12).matrix();
  for (double alpha : {0.7, 2.0}) {
    double base = renyi::conditional_renyi(rho_ab, 2, 2, alpha, params).value;
    double extended =
        renyi::conditional_renyi(mat::tensor(rho_ab, sigma_c), 2, 4, alpha,
                                 params)
            .value;
    CHECK(std::abs(base - extended) <= 1e-6);
  }

  // pure bipartite states: duality against the trivial conditioner
  CVec mes = quantum::maximally_entangled_vector(2);
  Mat mes_op = mes * mes.adjoint();
  for (double alpha : {0.6, 0.8, 2.0})
    CHECK(std::abs(renyi::conditional_renyi(mes_op, 2, 2, alpha, params).value -
                   (-1.0)) <= 1e-5);

  for (int t = 0; t < 10; ++t) {
    CVec psi = quantum::random_pure(4, derive_seed(20, t)).amplitudes();
    Mat full = psi * psi.adjoint();
    Mat rho_a = mat::partial_trace(full, {2, 2}, {0});
    for (double alpha : {0.6, 2.0}) {
      double beta = div::RenyiOrder::conjugate(alpha);
      double cond = renyi::conditional_renyi(full, 2, 2, alpha, params).value;
      CHECK(std::abs(cond + renyi::renyi_entropy(rho_a, beta)) <= 1e-5);
    }
  }

  // classical-classical states against a brute-force simplex grid
  std::vector<double> joint{0.4, 0.1, 0.2, 0.3};
  Mat cc = Mat::Zero(4, 4);
  for (int i = 0; i < 4; ++i) cc(i, i) = joint[i];
  for (double alpha : {0.7, 2.0}) {
    double mine = renyi::conditional_renyi(cc, 2, 2, alpha, params).value;
    double grid =
        -oracles::diagonal_conditional_grid_min(joint, 2, alpha, 10000);
    CHECK(std::abs(mine - grid) <= 1e-4);
  }

  // alpha = 1 falls back to the von Neumann conditional entropy
  Mat rho = quantum::random_density(4, 4, 31).matrix();
  Mat rho_b = mat::partial_trace(rho, {2, 2}, {1});
  double vn = div::von_neumann_entropy(rho) - div::von_neumann_entropy(rho_b);
  CHECK(std::abs(renyi::conditional_renyi(rho, 2, 2, 1.0, params).value - vn) <=
        1e-10);
}

TEST_CASE("Renyi mutual information") {
  renyi::OptimizerParams params;
  params.seed = 13;

  Mat prod = mat::tensor(quantum::random_density(2, 2, 41).matrix(),
                         quantum::random_density(2, 2, 42).matrix());
  for (double alpha : {0.7, 2.0})
    CHECK(std::abs(renyi::renyi_mutual_info(prod, 2, 2, alpha, params).value) <=
          1e-6);

  // maximally entangled pair against the Bloch-ball grid oracle
  Mat mes = quantum::maximally_entangled(2);
  double mine = renyi::renyi_mutual_info(mes, 2, 2, 2.0, params).value;
  double oracle = oracles::mutual_info_grid_min(mes, 2, 2.0, 24);
  CHECK(std::abs(mine - oracle) <= 1e-3);

  // nonnegative on states, and the alpha = 1 case is the mutual information
  Mat rho = quantum::random_density(4, 4, 43).matrix();
  CHECK(renyi::renyi_mutual_info(rho, 2, 2, 0.8, params).value >= -1e-9);
  Mat rho_a = mat::partial_trace(rho, {2, 2}, {0});
  Mat rho_b = mat::partial_trace(rho, {2, 2}, {1});
  double mi = div::von_neumann_entropy(rho_a) + div::von_neumann_entropy(rho_b) -
              div::von_neumann_entropy(rho);
  CHECK(std::abs(renyi::renyi_mutual_info(rho, 2, 2, 1.0, params).value - mi) <=
        1e-10);
}

TEST_CASE("conditional Renyi mutual information") {
  // decoupled A gives zero
  Mat rho_bc = quantum::random_density(4, 4, 51).matrix();
  Mat rho_a = quantum::random_density(2, 2, 52).matrix();
  Mat decoupled = mat::tensor(rho_a, rho_bc);
  for (double alpha : {0.7, 1.5})
    CHECK(std::abs(renyi::renyi_cmi(decoupled, 2, 2, 2, alpha)) <= 1e-8);

  // trivial C reduces to the unoptimized mutual-information functional
  Mat rho_ab = quantum::random_density(4, 4, 53).matrix();
  Mat as_abc = rho_ab;  // dims (2, 2, 1)
  for (double alpha : {0.7, 2.0}) {
    double via_cmi = renyi::renyi_cmi(as_abc, 2, 2, 1, alpha);
    Mat marg_a = mat::partial_trace(rho_ab, {2, 2}, {0});
    Mat marg_b = mat::partial_trace(rho_ab, {2, 2}, {1});
    double direct =
        div::srd(rho_ab, mat::tensor(marg_a, marg_b), alpha).or_inf();
    CHECK(std::abs(via_cmi - direct) <= 1e-9);
  }

  // rank-deficient BC marginal is rejected unless regularized
  CVec ghz(8);
  ghz.setZero();
  ghz[0] = 1.0 / std::sqrt(2.0);
  ghz[7] = 1.0 / std::sqrt(2.0);
  Mat ghz_op = ghz * ghz.adjoint();
  CHECK_THROWS_AS(renyi::renyi_cmi(ghz_op, 2, 2, 2, 2.0),
                  SingularMarginalError);
  CHECK(std::isfinite(renyi::renyi_cmi(ghz_op, 2, 2, 2, 2.0, true)));

  // alpha -> 1 approaches the von Neumann conditional mutual information
  Mat rho_abc = quantum::random_density(8, 8, 54).matrix();
  std::vector<int> dims{2, 2, 2};
  auto vn = [&](const std::vector<int>& keep) {
    return div::von_neumann_entropy(mat::partial_trace(rho_abc, dims, keep));
  };
  double cmi = vn({0, 2}) + vn({1, 2}) - vn({0, 1, 2}) - vn({2});
  CHECK(std::abs(renyi::renyi_cmi(rho_abc, 2, 2, 2, 1.0 + 1e-3) - cmi) <= 1e-2);
  CHECK(std::abs(renyi::renyi_cmi(rho_abc, 2, 2, 2, 1.0 - 1e-3) - cmi) <= 1e-2);
}

TEST_CASE("fidelity bound margins") {
  renyi::OptimizerParams params;
  params.seed = 17;
  double alpha = 0.75;

  // identical states: the bound reduces to monotonicity in the order
  Mat rho = quantum::random_density(3, 3, 61).matrix();
  CHECK(renyi::fidelity_bound_margin_entropy(rho, rho, alpha) >= -1e-10);
  Mat rho_ab = quantum::random_density(4, 4, 62).matrix();
  CHECK(renyi::fidelity_bound_margin_conditional(rho_ab, rho_ab, 2, 2, alpha,
                                                 params) >= -1e-7);

  // the mutual clause needs equal A marginals
  Mat other = quantum::random_density(4, 4, 63).matrix();
  CHECK_THROWS_AS(renyi::fidelity_bound_margin_mutual(rho_ab, other, 2, 2,
                                                      alpha, params),
                  PreconditionViolationError);
  Rng rng(64);
  Mat u = quantum::random_unitary(2, rng);
  Mat local = mat::tensor(Mat::Identity(2, 2), u);
  Mat sigma_ab = local * rho_ab * local.adjoint();
  CHECK(renyi::fidelity_bound_margin_mutual(rho_ab, sigma_ab, 2, 2, alpha,
                                            params) >= -1e-7);

  for (int t = 0; t < 50; ++t) {
    Mat a = quantum::random_density(3, 3, derive_seed(65, t)).matrix();
    Mat b = quantum::random_density(3, 3, derive_seed(66, t)).matrix();
    CHECK(renyi::fidelity_bound_margin_entropy(a, b, alpha) >= -1e-7);
  }
}

TEST_CASE("Renyi coherent information") {
  renyi::OptimizerParams params;
  params.seed = 19;
  params.restarts = 3;
  params.outer_iters = 40;

  // perfect channel: one full bit, found at the maximally entangled input
  auto ident = quantum::identity_channel(2);
  double perfect = renyi::renyi_coherent_info(ident, 2.0, params).value;
  CHECK(std::abs(perfect - 1.0) <= 1e-4);

  // complete depolarization decouples the output
  auto depol = quantum::depolarizing_channel(2, 1.0);
  CHECK(renyi::renyi_coherent_info(depol, 2.0, params).value <= 1e-6);

  // near order one, agrees with the von Neumann coherent information of a
  // dephasing channel, maximized over the known one-parameter input family
  auto deph = quantum::dephasing_channel(2, 0.3);
  double best = -10;
  for (int k = 1; k < 200; ++k) {
    double p = static_cast<double>(k) / 200;
    CVec phi(4);
    phi.setZero();
    phi[0] = std::sqrt(p);
    phi[3] = std::sqrt(1 - p);
    auto [omega, dims] =
        quantum::apply_channel_at(phi * phi.adjoint(), {2, 2}, 1, deph);
    Mat omega_b = mat::partial_trace(omega, {2, 2}, {1});
    best = std::max(best, div::von_neumann_entropy(omega_b) -
                              div::von_neumann_entropy(omega));
  }
  double via_renyi = renyi::renyi_coherent_info(deph, 1.0, params).value;
  CHECK(std::abs(via_renyi - best) <= 1e-3);
}
