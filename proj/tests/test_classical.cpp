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
#include <sstream>

#include "oracles.hpp"
#include "qdiv/classical.hpp"
#include "qdiv/divergence.hpp"
#include "qdiv/quantum.hpp"

using namespace qdiv;
using classical::ClassicalDistribution;
using mat::Mat;

namespace {

Mat diag2(double a, double b) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("Nussbaum-Szkola distributions") {
  // commuting pair: supported on the diagonal with the eigenvalues
  auto [p, q] = classical::nussbaum_szkola(diag2(0.8, 0.2), diag2(0.5, 0.5));
  std::vector<double> ps = p.weights, qs = q.weights;
  std::sort(ps.begin(), ps.end());
  std::sort(qs.begin(), qs.end());
  CHECK(ps[2] == doctest::Approx(0.2));
  CHECK(ps[3] == doctest::Approx(0.8));
  CHECK(qs[2] == doctest::Approx(0.5));

  // the pinned overlap example
  Mat sigma(2, 2);
  sigma << 0.5, 0.25, 0.25, 0.5;
  auto [p2, q2] = classical::nussbaum_szkola(diag2(1.0, 0.0), sigma);
  std::vector<double> nonzero;
  for (double w : p2.weights)
    if (w > 1e-12) nonzero.push_back(w);
  REQUIRE(nonzero.size() == 2);
  CHECK(nonzero[0] == doctest::Approx(0.5));
  CHECK(nonzero[1] == doctest::Approx(0.5));

  // moment identities on random pairs
  for (int t = 0; t < 50; ++t) {
    Mat a = quantum::random_density(3, 3, derive_seed(1, t)).matrix();
    Mat b = quantum::random_density(3, 3, derive_seed(2, t)).matrix();
    auto [pp, qq] = classical::nussbaum_szkola(a, b);
    CHECK(std::abs(classical::kl(pp, qq) - div::qre(a, b).value) <= 1e-9);
    CHECK(std::abs(classical::info_variance(pp, qq) - div::qiv(a, b)) <= 1e-9);
  }
}

TEST_CASE("classical divergence moments") {
  ClassicalDistribution p({0.8, 0.2}, true);
  ClassicalDistribution q({0.5, 0.5}, true);
  CHECK(classical::kl(p, q) == doctest::Approx(0.278071905112638));
  CHECK(classical::info_variance(p, q) == doctest::Approx(0.64));
  CHECK(classical::third_moment(p, q) ==
        doctest::Approx(0.8 * 0.064 + 0.2 * 4.096));
  CHECK(classical::kl(p, p) == doctest::Approx(0.0));
  CHECK(classical::info_variance(p, p) == doctest::Approx(0.0));

  // against the flat weight vector: minus the entropy, and the variance
  ClassicalDistribution ones({1.0, 1.0}, false);
  double h = -(0.8 * std::log2(0.8) + 0.2 * std::log2(0.2));
  CHECK(classical::kl(p, ones) == doctest::Approx(-h));
  CHECK(classical::info_variance(p, ones) == doctest::Approx(0.64));

  // support violation
  ClassicalDistribution broken({1.0, 0.0}, true);
  ClassicalDistribution target({0.0, 1.0}, true);
  CHECK(std::isinf(classical::kl(broken, target)));
}

TEST_CASE("Gaussian CDF and quantile") {
  CHECK(classical::gaussian_cdf(0.0) == doctest::Approx(0.5));
  CHECK(classical::gaussian_quantile(0.5) == doctest::Approx(0.0));
  CHECK(std::abs(classical::gaussian_quantile(0.975) - 1.959964) <= 1e-6);
  CHECK(std::abs(classical::gaussian_cdf(1.0) - 0.841344746068543) <= 1e-9);
  CHECK(std::abs(classical::gaussian_cdf(1.0) -
                 oracles::gaussian_cdf_quadrature(1.0)) <= 1e-12);

  for (int k = 1; k < 1000; ++k) {
    double eps = static_cast<double>(k) / 1000.0;
    double x = classical::gaussian_quantile(eps);
    CHECK(std::abs(classical::gaussian_cdf(x) - eps) <= 1e-9);
    CHECK(std::abs(classical::gaussian_cdf(-x) - (1.0 - eps)) <= 1e-12);
  }
  CHECK_THROWS_AS(classical::gaussian_quantile(0.0), DomainError);
  CHECK_THROWS_AS(classical::gaussian_quantile(1.0), DomainError);
}

TEST_CASE("exact i.i.d. tails") {
  ClassicalDistribution p({0.8, 0.2}, true);
  CHECK(classical::iid_tail(p, 1, std::log2(0.5)) == doctest::Approx(0.2));
  CHECK(classical::iid_tail(p, 2, std::log2(0.2)) == doctest::Approx(0.36));
  CHECK(classical::iid_tail(p, 7, 100.0) == doctest::Approx(1.0));

  // exhaustive enumeration cross-check at small n
  for (int n = 1; n <= 20; ++n) {
    double gamma = -0.9 * n;
    CHECK(std::abs(classical::iid_tail(p, n, gamma) -
                   oracles::exhaustive_tail_d2(0.8, 0.2, n, gamma)) <= 1e-12);
  }

  // boundary atoms within relative 1e-12 of the threshold count as inside
  double atom = 2.0 * std::log2(0.8);
  CHECK(classical::iid_tail(p, 2, atom) == doctest::Approx(1.0));
  CHECK(classical::iid_tail(p, 2, atom - 1e-9) == doctest::Approx(0.36));

  // three-letter alphabet agrees with direct convolution at n = 2
  ClassicalDistribution p3({0.5, 0.3, 0.2}, true);
  double g = std::log2(0.5 * 0.3) + 1e-13;
  double expect = 0.0;
  double atoms[3] = {0.5, 0.3, 0.2};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (std::log2(atoms[i] * atoms[j]) <= g + 1e-12)
        expect += atoms[i] * atoms[j];
  CHECK(classical::iid_tail(p3, 2, g) == doctest::Approx(expect));
}

TEST_CASE("Berry-Esseen normalized deviation") {
  ClassicalDistribution p({0.8, 0.2}, true);
  ClassicalDistribution q({0.5, 0.5}, true);
  double worst = classical::berry_esseen_check(p, q, {25, 100, 400});
  CHECK(worst <= 0.5);
  CHECK(worst > 0.0);

  ClassicalDistribution flat({0.5, 0.5}, true);
  ClassicalDistribution ones({1.0, 1.0}, false);
  CHECK_THROWS_AS(classical::berry_esseen_check(flat, ones, {10}),
                  DegenerateVarianceError);
}

TEST_CASE("second order expansion of the classical spectrum entropy") {
  ClassicalDistribution p({0.8, 0.2}, true);
  ClassicalDistribution q({0.5, 0.5}, true);

  auto [exact_half, expansion_half] =
      classical::second_order_classical(p, q, 100, 0.5);
  CHECK(expansion_half == doctest::Approx(100 * 0.278071905112638));

  auto [exact, expansion] = classical::second_order_classical(p, q, 100, 0.2);
  CHECK(expansion ==
        doctest::Approx(27.8071905112638 +
                        8.0 * classical::gaussian_quantile(0.2)));
  CHECK(std::abs(expansion - 21.07421) <= 1e-4);

  // the gap to the exact value stays bounded over n
  double bound = 0.0;
  for (int n : {50, 100, 200, 500, 1000, 2000}) {
    auto [ex, approx] = classical::second_order_classical(p, q, n, 0.2);
    bound = std::max(bound, std::abs(ex - approx));
  }
  CHECK(bound <= 3.0);
}

TEST_CASE("second order figure rows") {
  ClassicalDistribution p({0.8, 0.2}, true);
  ClassicalDistribution q({0.5, 0.5}, true);
  std::stringstream ss;
  classical::write_second_order_csv(ss, p, q, {50, 100, 200}, 0.2);
  std::string header;
  std::getline(ss, header);
  CHECK(header == "n,exact,expansion,bound");
  int rows = 0;
  std::string line;
  while (std::getline(ss, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 3);
}

TEST_CASE("information spectrum sandwich against the classical ends") {
  Mat rho = quantum::random_density(2, 2, 11).matrix();
  Mat sigma = quantum::random_density(2, 2, 12).matrix();
  auto [lhs, mid, rhs] =
      classical::quantum_ds_bounds_check(rho, sigma, 0.3, 0.05, 0.05);
  CHECK(lhs <= mid + 2e-4);
  CHECK(mid <= rhs + 2e-4);

  // commuting case still satisfies the ordering
  auto [lhs2, mid2, rhs2] = classical::quantum_ds_bounds_check(
      diag2(0.8, 0.2), diag2(0.5, 0.5), 0.3, 0.05, 0.05);
  CHECK(lhs2 <= mid2 + 2e-4);
  CHECK(mid2 <= rhs2 + 2e-4);

  CHECK_THROWS_AS(
      classical::quantum_ds_bounds_check(rho, sigma, 0.3, 0.2, 0.2),
      BudgetViolationError);
}

TEST_CASE("asymptotics of the spectral mass") {
  ClassicalDistribution p({0.8, 0.2}, true);
  double s = 0.721928094887362;
  auto at_rate = classical::corollary_428_values(p, s, 0.0, {2000});
  CHECK(std::abs(at_rate[0] - 0.5) <= 0.02);
  auto above = classical::corollary_428_values(p, s + 0.1, 0.0, {2000});
  CHECK(above[0] <= 0.01);
  auto below = classical::corollary_428_values(p, s - 0.1, 0.0, {2000});
  CHECK(below[0] >= 0.99);

  // the C parameter shifts the limit through the Gaussian
  auto shifted = classical::corollary_428_values(p, s, 0.8, {2000});
  CHECK(std::abs(shifted[0] - classical::gaussian_cdf(1.0)) <= 0.02);
}
