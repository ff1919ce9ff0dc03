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

#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "oracles.hpp"
#include "qdiv/classical.hpp"
#include "qdiv/coding.hpp"
#include "qdiv/converse.hpp"
#include "qdiv/divergence.hpp"
#include "qdiv/io.hpp"
#include "qdiv/matcore.hpp"
#include "qdiv/quantum.hpp"
#include "qdiv/renyi.hpp"
#include "qdiv/rng.hpp"

namespace qdiv::suites {

using mat::CVec;
using mat::Mat;
using quantum::QuantumChannel;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Mat random_hermitian(int d, Rng& rng) {
  Mat g = quantum::ginibre(d, d, rng);
  return (g + g.adjoint()) / 2.0;
}

Mat random_psd(int d, Rng& rng) {
  Mat g = quantum::ginibre(d, d, rng);
  return g * g.adjoint();
}

Mat random_state(int d, Rng& rng, int rank = -1) {
  if (rank <= 0) rank = d;
  Mat g = quantum::ginibre(d, rank, rng);
  Mat rho = g * g.adjoint();
  return rho / rho.trace().real();
}

// Worst-ratio accumulator: each check contributes violation / tolerance.
struct Worst {
  double value = -kInf;
  void check(double violation, double tolerance) {
    value = std::max(value, violation / tolerance);
  }
  void require(bool ok) { value = std::max(value, ok ? 0.0 : 2.0); }
};

// ---------------------------------------------------------------- matcore --

double suite_eig(std::uint64_t seed, long index) {
  Rng rng(seed);
  int d = 2 + static_cast<int>(index % 7);
  Mat h = random_hermitian(d, rng);
  auto s = mat::eig_hermitian(h);
  Worst w;
  double scale = std::max(1.0, mat::max_abs(h));
  w.check(mat::max_abs(s.reconstruct() - h), 1e-10 * scale);
  w.check(mat::max_abs(s.eigenvectors.adjoint() * s.eigenvectors -
                       Mat::Identity(d, d)),
          1e-10);
  for (int i = 0; i + 1 < d; ++i)
    w.require(s.eigenvalues[i] >= s.eigenvalues[i + 1]);
  // within-cluster spread stays below the clustering tolerance
  for (auto [b, e] : s.clusters)
    w.check(s.eigenvalues[b] - s.eigenvalues[e - 1],
            mat::default_cluster_tol(h));
  return w.value;
}

double suite_matrix_ineq(std::uint64_t seed, long index) {
  (void)index;
  Rng rng(seed);
  Worst w;
  Mat a = random_psd(3, rng);
  Mat b = random_psd(3, rng);

  // Araki-Lieb-Thirring at q = 1, r in {2, 1/2}
  Mat bh = mat::matrix_power(b, 0.5);
  Mat inner = bh * a * bh;
  double lhs2 = (inner * inner).trace().real();
  double rhs2 = (b * a * a * b).trace().real();
  double scale = std::max(1.0, std::abs(lhs2) + std::abs(rhs2));
  w.check(lhs2 - rhs2, 1e-9 * scale);
  Mat ah = mat::matrix_power(a, 0.5);
  Mat bq = mat::matrix_power(b, 0.25);
  double lhs_h = mat::matrix_power(inner, 0.5).trace().real();
  double rhs_h = (bq * ah * bq).trace().real();
  w.check(rhs_h - lhs_h, 1e-9 * std::max(1.0, lhs_h + rhs_h));

  // McCarthy for p = 1/2 and the reverse for p = 2 on positive pairs
  auto schatten_pow = [](const Mat& x, double p) {
    return std::pow(mat::schatten_norm(x, p), p);
  };
  w.check(schatten_pow(a + b, 0.5) - schatten_pow(a, 0.5) - schatten_pow(b, 0.5),
          1e-9);
  w.check(schatten_pow(a, 2) + schatten_pow(b, 2) - schatten_pow(a + b, 2),
          1e-9 * std::max(1.0, schatten_pow(a + b, 2)));

  // Hoelder with p = q = 2 and the 2-alpha norm identity
  Mat m = quantum::ginibre(3, 3, rng);
  Mat n = quantum::ginibre(3, 3, rng);
  w.check(mat::schatten_norm(m * n, 1) -
              mat::schatten_norm(m, 2) * mat::schatten_norm(n, 2),
          1e-9 * std::max(1.0, mat::schatten_norm(m, 2)));
  double alpha = 0.6 + rng.uniform() * 2.0;
  double norm2a = mat::schatten_norm(m, 2 * alpha);
  w.check(std::abs(norm2a * norm2a -
                   mat::schatten_norm(m.adjoint() * m, alpha)),
          1e-10 * std::max(1.0, norm2a * norm2a));

  // nesting of threshold projectors
  Mat x = random_psd(3, rng);
  double lo = rng.uniform() * 2.0;
  double hi = lo + 0.5 + rng.uniform();
  Mat p_hi = mat::spectral_projector(std::exp2(-hi) * Mat::Identity(3, 3) - x,
                                     mat::Relation::GreaterEqual);
  Mat p_lo = mat::spectral_projector(std::exp2(-lo) * Mat::Identity(3, 3) - x,
                                     mat::Relation::GreaterEqual);
  auto min_eig = [](const Mat& h) {
    auto s = mat::eig_hermitian(h);
    return s.eigenvalues[s.dim() - 1];
  };
  w.check(-min_eig(p_lo - p_hi), 1e-10);

  // positive part monotone under channels
  QuantumChannel lam = quantum::random_channel(3, 2, 2, rng.bits());
  w.check(mat::positive_part_trace(lam.apply(a), lam.apply(b)) -
              mat::positive_part_trace(a, b),
          1e-10 * std::max(1.0, mat::positive_part_trace(a, b)));

  // Ky Fan maximum against sampled projections
  Mat rho = random_state(4, rng);
  double top2 = mat::top_m_eigensum(rho, 2);
  for (int t = 0; t < 10; ++t) {
    Mat u = quantum::random_unitary(4, rng);
    Mat proj = u.leftCols(2) * u.leftCols(2).adjoint();
    w.check((proj * rho).trace().real() - top2, 1e-9);
  }

  // separable states are majorized by their marginals
  std::vector<double> probs{0.5, 0.3, 0.2};
  Mat sep = Mat::Zero(4, 4);
  for (double p : probs)
    sep += p * mat::tensor(random_state(2, rng), random_state(2, rng));
  auto lam_of = [](const Mat& h) {
    auto s = mat::eig_hermitian(h);
    std::vector<double> v(s.dim());
    for (int i = 0; i < s.dim(); ++i) v[i] = s.eigenvalues[i];
    return v;
  };
  Mat sep_a = mat::partial_trace(sep, {2, 2}, {0});
  w.require(mat::is_majorized(lam_of(sep), lam_of(sep_a)));

  // pinching: commutation, trace, and the distinct-count operator bound
  Mat sigma = random_state(3, rng);
  Mat pin = mat::pinch(sigma, rho.topLeftCorner(3, 3) /
                                  rho.topLeftCorner(3, 3).trace().real());
  w.check(mat::max_abs(sigma * pin - pin * sigma), 1e-9);
  return w.value;
}

// ---------------------------------------------------------------- quantum --

double suite_quantum(std::uint64_t seed, long index) {
  Rng rng(seed);
  Worst w;
  int d = 2 + static_cast<int>(index % 3);
  quantum::DensityMatrix rho = quantum::random_density(d, d, rng.bits());

  // purification freedom: Schmidt coefficients agree across purifications
  quantum::PureStateVector psi1 = quantum::purify(rho);
  int rank = psi1.dim() / d;
  Mat u = quantum::random_unitary(rank, rng);
  CVec psi2 = CVec::Zero(psi1.dim());
  for (int a = 0; a < d; ++a)
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j)
        psi2[static_cast<long>(a) * rank + i] +=
            u(i, j) * psi1.amplitudes()[static_cast<long>(a) * rank + j];
  auto s1 = quantum::schmidt(psi1.amplitudes(), d, rank);
  auto s2 = quantum::schmidt(psi2, d, rank);
  w.check(mat::max_abs(Mat(s1.coefficients - s2.coefficients)), 1e-9);
  Mat traced = mat::partial_trace(psi1.projector(), {d, rank}, {0});
  w.check(mat::max_abs(traced - rho.matrix()), 1e-9);

  // channel composition: associative and trace preserving
  QuantumChannel c1 = quantum::random_channel(d, d, 2, rng.bits());
  QuantumChannel c2 = quantum::random_channel(d, 2, 2, rng.bits());
  QuantumChannel c3 = quantum::random_channel(2, 3, 2, rng.bits());
  Mat x = random_state(d, rng);
  Mat via_left = c3.compose_after(c2.compose_after(c1)).apply(x);
  Mat via_right = c3.compose_after(c2).compose_after(c1).apply(x);
  w.check(mat::max_abs(via_left - via_right), 1e-12);
  w.check(std::abs(via_left.trace().real() - 1.0), 1e-10);

  // Stinespring isometry reproduces the channel
  Mat v = c2.stinespring();
  w.check(mat::max_abs(v.adjoint() * v - Mat::Identity(d, d)), 1e-10);
  Mat dilated = v * x * v.adjoint();
  Mat traced_env =
      mat::partial_trace(dilated, {c2.env_dim(), c2.out_dim()}, {1});
  w.check(mat::max_abs(traced_env - c2.apply(x)), 1e-9);

  // adjoint pairing and unitality
  Mat y = random_hermitian(2, rng);
  double lhs = (c2.apply(x).adjoint() * y).trace().real();
  double rhs = (x.adjoint() * c2.adjoint_apply(y)).trace().real();
  w.check(std::abs(lhs - rhs), 1e-9 * std::max(1.0, std::abs(lhs)));
  w.check(mat::max_abs(c2.adjoint_apply(Mat::Identity(2, 2)) -
                       Mat::Identity(d, d)),
          1e-10);
  return w.value;
}

// ------------------------------------------------------------- divergence --

double suite_dpi(std::uint64_t seed, long index) {
  Rng rng(seed);
  Worst w;
  int d = 2 + static_cast<int>(index % 3);
  Mat rho = random_state(d, rng);
  Mat sigma = random_state(d, rng);
  int out = 2 + static_cast<int>(rng.index(3));
  QuantumChannel lam = quantum::random_channel(d, out, 2, rng.bits());
  Mat rho_out = lam.apply(rho);
  Mat sigma_out = lam.apply(sigma);
  for (double alpha : {0.6, 0.9, 1.5, 3.0}) {
    double before = div::srd(rho, sigma, alpha).or_inf();
    double after = div::srd(rho_out, sigma_out, alpha).or_inf();
    w.check(after - before, 1e-9 * std::max(1.0, std::abs(before)));
  }
  for (double alpha : {0.5, 1.5, 2.0}) {
    double before = div::rre(rho, sigma, alpha).or_inf();
    double after = div::rre(rho_out, sigma_out, alpha).or_inf();
    w.check(after - before, 1e-9 * std::max(1.0, std::abs(before)));
  }
  return w.value;
}

double suite_alpha_mono(std::uint64_t seed, long index) {
  (void)index;
  Rng rng(seed);
  Worst w;
  int d = 2 + static_cast<int>(rng.index(3));
  Mat rho = random_state(d, rng);
  Mat sigma = random_state(d, rng);
  const double orders[] = {0.55, 0.8, 1.3, 2.0, 4.0};
  double prev = -kInf;
  for (double alpha : orders) {
    double cur = div::srd(rho, sigma, alpha).or_inf();
    w.check(prev - cur, 1e-9);
    prev = cur;
  }
  // monotonicity in the second slot for alpha >= 1/2
  Mat tau = sigma + 0.3 * random_psd(d, rng);
  for (double alpha : {0.6, 2.0})
    w.check(div::srd(rho, tau, alpha).or_inf() -
                div::srd(rho, sigma, alpha).or_inf(),
            1e-9);
  // sandwiched never exceeds the non-sandwiched family
  for (double alpha : {0.3, 0.7, 2.0, 5.0})
    w.check(div::srd(rho, sigma, alpha).or_inf() -
                div::rre(rho, sigma, alpha).or_inf(),
            1e-9);
  return w.value;
}

double suite_limit_qre(std::uint64_t seed, long index) {
  (void)index;
  Rng rng(seed);
  Worst w;
  int d = 2 + static_cast<int>(rng.index(3));
  Mat rho = random_state(d, rng);
  Mat sigma = random_state(d, rng);
  double base = div::qre(rho, sigma).or_inf();
  for (double alpha : {1.0 - 1e-4, 1.0 + 1e-4})
    w.check(std::abs(div::srd(rho, sigma, alpha).or_inf() - base),
            1e-2 * (1.0 + std::abs(base)));
  return w.value;
}

double suite_premetric(std::uint64_t seed, long index) {
  (void)index;
  Rng rng(seed);
  Worst w;
  int d = 2 + static_cast<int>(rng.index(3));
  Mat rho = random_state(d, rng);
  Mat sigma = random_state(d, rng);
  for (double alpha : {0.6, 2.0}) {
    w.check(-div::srd(rho, sigma, alpha).or_inf(), 1e-9);
    w.check(std::abs(div::srd(rho, rho, alpha).or_inf()), 1e-8);
    if (div::trace_distance(rho, sigma) > 1e-3)
      w.require(div::srd(rho, sigma, alpha).or_inf() > 1e-8);
  }
  // tensor additivity
  Mat rho2 = random_state(2, rng);
  Mat sigma2 = random_state(2, rng);
  double joint =
      div::srd(mat::tensor(rho, rho2), mat::tensor(sigma, sigma2), 2.0).or_inf();
  double split = div::srd(rho, sigma, 2.0).or_inf() +
                 div::srd(rho2, sigma2, 2.0).or_inf();
  w.check(std::abs(joint - split), 1e-8 * std::max(1.0, std::abs(split)));
  // isometric and tensor invariance of the trace functional
  Mat u = quantum::random_unitary(d + 1, rng);
  Mat iso = u.leftCols(d);
  w.check(std::abs(div::srd_q(iso * rho * iso.adjoint(),
                              iso * sigma * iso.adjoint(), 2.0) -
                   div::srd_q(rho, sigma, 2.0)),
          1e-9);
  return w.value;
}

double suite_convexity(std::uint64_t seed, long index) {
  (void)index;
  Rng rng(seed);
  Worst w;
  int d = 2 + static_cast<int>(rng.index(2));
  Mat rho1 = random_state(d, rng), sigma1 = random_state(d, rng);
  Mat rho2 = random_state(d, rng), sigma2 = random_state(d, rng);
  for (double lam : {0.3, 0.5}) {
    Mat rho_mix = lam * rho1 + (1 - lam) * rho2;
    Mat sigma_mix = lam * sigma1 + (1 - lam) * sigma2;
    for (double alpha : {0.7, 2.0}) {
      double mixed = div::srd_q(rho_mix, sigma_mix, alpha);
      double split = lam * div::srd_q(rho1, sigma1, alpha) +
                     (1 - lam) * div::srd_q(rho2, sigma2, alpha);
      double violation = alpha > 1 ? mixed - split : split - mixed;
      w.check(violation, 1e-9 * std::max(1.0, std::abs(split)));
    }
  }
  return w.value;
}

double suite_ns(std::uint64_t seed, long index) {
  Rng rng(seed);
  Worst w;
  int d = 2 + static_cast<int>(index % 3);
  Mat rho = random_state(d, rng);
  Mat sigma = random_state(d, rng);
  auto [p, q] = classical::nussbaum_szkola(rho, sigma);
  double d_q = div::qre(rho, sigma).or_inf();
  double v_q = div::qiv(rho, sigma);
  w.check(std::abs(classical::kl(p, q) - d_q), 1e-9 * (1.0 + std::abs(d_q)));
  w.check(std::abs(classical::info_variance(p, q) - v_q),
          1e-9 * (1.0 + std::abs(v_q)));
  w.check(std::abs(p.total() - 1.0), 1e-10);
  w.check(std::abs(q.total() - 1.0), 1e-10);

  // support transfer both ways
  Mat rho_low = random_state(d, rng, d - 1);
  auto [p2, q2] = classical::nussbaum_szkola(rho_low, sigma);
  w.require(std::isfinite(classical::kl(p2, q2)));
  Mat sigma_low = random_state(d, rng, d - 1);
  if (!div::support_contained(rho, sigma_low)) {
    auto [p3, q3] = classical::nussbaum_szkola(rho, sigma_low);
    w.require(!std::isfinite(classical::kl(p3, q3)));
  }

  // i.i.d. factorization at n = 2, compared through the basis-invariant
  // log-ratio tail (degenerate tensor spectra admit many eigenbases)
  auto [pp, qq] =
      classical::nussbaum_szkola(mat::tensor(rho, rho), mat::tensor(sigma, sigma));
  auto ratio_atoms = [](const classical::ClassicalDistribution& num,
                        const classical::ClassicalDistribution& den) {
    std::pair<std::vector<double>, std::vector<double>> out;
    for (size_t x = 0; x < num.size(); ++x) {
      if (num.weights[x] <= 1e-14) continue;
      out.first.push_back(std::log2(num.weights[x] / den.weights[x]));
      out.second.push_back(num.weights[x]);
    }
    return out;
  };
  auto [v1, m1] = ratio_atoms(p, q);
  auto [v2, m2] = ratio_atoms(pp, qq);
  double dev = 0;
  for (int k = 0; k <= 16; ++k) {
    double t = -8.0 + k;
    dev = std::max(dev, std::abs(classical::iid_sum_tail(v1, m1, 2, t) -
                                 classical::iid_sum_tail(v2, m2, 1, t)));
  }
  w.check(dev, 1e-9);
  return w.value;
}

double suite_dh_oracle(std::uint64_t seed, long index) {
  (void)index;
  Rng rng(seed);
  Worst w;
  Mat rho = random_state(2, rng);
  Mat sigma = random_state(2, rng);
  double eps = 0.1 + 0.5 * rng.uniform();
  double dh = div::hypothesis_testing_re(rho, sigma, eps);
  // sandwich between the dual certificate and the feasible-test sweep
  double beta_dual = oracles::np_dual_beta(rho, sigma, eps);
  w.check(std::abs(dh - (-std::log2(beta_dual))), 1e-4);
  // the sweep only probes feasible tests, so it upper-bounds the optimum
  double beta_sweep = oracles::qubit_test_sweep_beta(rho, sigma, eps);
  w.check(std::exp2(-dh) - beta_sweep, 1e-6);

  // exact classical reduction
  std::vector<double> pw{0.8, 0.2}, qw{0.5, 0.5};
  Mat rho_c = Mat::Zero(2, 2), sigma_c = Mat::Zero(2, 2);
  rho_c(0, 0) = pw[0];
  rho_c(1, 1) = pw[1];
  sigma_c(0, 0) = qw[0];
  sigma_c(1, 1) = qw[1];
  double eps_c = 0.05 + 0.9 * rng.uniform();
  double dh_c = div::hypothesis_testing_re(rho_c, sigma_c, eps_c);
  double beta_c = oracles::classical_np_beta(pw, qw, eps_c);
  w.check(std::abs(dh_c - (-std::log2(beta_c))), 1e-10);
  return w.value;
}

double suite_ds_sandwich(std::uint64_t seed, long index) {
  (void)index;
  Rng rng(seed);
  Worst w;
  int d = 2 + static_cast<int>(rng.index(2));
  Mat rho = random_state(d, rng);
  Mat sigma = random_state(d, rng);
  const double eps = 0.3, delta = 0.1;
  double uds = div::underline_ds(rho, sigma, eps);
  double ods = div::overline_ds(rho, sigma, 1.0 - eps);
  w.check(std::abs(uds - ods), 1e-8);
  double dh_lo = div::hypothesis_testing_re(rho, sigma, eps - delta);
  double dh_hi = div::hypothesis_testing_re(rho, sigma, eps);
  w.check(dh_lo + std::log2(delta) - uds, 1e-8);
  w.check(uds - dh_hi, 1e-8);
  // below the threshold variant, and scaling in the second slot
  double ds_grid = div::info_spectrum_ds(rho, sigma, eps);
  w.check(uds - ds_grid, 2e-4);
  double c = 0.5 + rng.uniform();
  w.check(std::abs(div::underline_ds(rho, c * sigma, eps) -
                   (uds - std::log2(c))),
          1e-8);
  // data processing
  QuantumChannel lam = quantum::random_channel(d, 2, 2, rng.bits());
  w.check(div::underline_ds(lam.apply(rho), lam.apply(sigma), eps) - uds, 1e-9);
  return w.value;
}

// ------------------------------------------------------------------ renyi --

double suite_duality(std::uint64_t seed, long index) {
  (void)index;
  Rng rng(seed);
  Worst w;
  CVec psi = quantum::random_pure(8, rng.bits()).amplitudes();
  Mat full = psi * psi.adjoint();
  std::vector<int> dims{2, 2, 2};
  Mat rho_ab = mat::partial_trace(full, dims, {0, 1});
  Mat rho_ac = mat::partial_trace(full, dims, {0, 2});
  for (double alpha : {0.6, 0.8, 2.0}) {
    double beta = div::RenyiOrder::conjugate(alpha);
    double lhs = renyi::conditional_renyi(rho_ab, 2, 2, alpha).value;
    double rhs = renyi::conditional_renyi(rho_ac, 2, 2, beta).value;
    w.check(std::abs(lhs + rhs), 5e-5);
  }
  return w.value;
}

double suite_subadditivity(std::uint64_t seed, long index) {
  (void)index;
  Rng rng(seed);
  Worst w;
  int da = 2 + static_cast<int>(rng.index(2));
  int db = 2 + static_cast<int>(rng.index(2));
  Mat rho_ab = random_state(da * db, rng);
  Mat rho_a = mat::partial_trace(rho_ab, {da, db}, {0});
  double logb = std::log2(static_cast<double>(db));
  for (double alpha : {0.5, 2.0, 5.0}) {
    double joint = renyi::renyi_entropy(rho_ab, alpha);
    double local = renyi::renyi_entropy(rho_a, alpha);
    w.check(joint - local - logb, 1e-9);
    w.check(local - logb - joint, 1e-9);
  }
  return w.value;
}

double suite_entropy_duality(std::uint64_t seed, long index) {
  (void)index;
  Rng rng(seed);
  Worst w;
  int da = 2 + static_cast<int>(rng.index(2));
  int db = 2 + static_cast<int>(rng.index(2));
  CVec psi = quantum::random_pure(da * db, rng.bits()).amplitudes();
  Mat full = psi * psi.adjoint();
  Mat rho_a = mat::partial_trace(full, {da, db}, {0});
  Mat rho_b = mat::partial_trace(full, {da, db}, {1});
  for (double alpha : {0.0, 0.5, 1.0, 2.0, 7.0}) {
    double sa = renyi::renyi_entropy(rho_a, alpha);
    double sb = renyi::renyi_entropy(rho_b, alpha);
    w.check(std::abs(sa - sb), 1e-10);
    w.check(-sa, 1e-9);
    w.check(sa - std::log2(static_cast<double>(da)), 1e-9);
  }
  // additivity over products
  Mat tau = random_state(2, rng);
  w.check(std::abs(renyi::renyi_entropy(mat::tensor(rho_a, tau), 2.0) -
                   renyi::renyi_entropy(rho_a, 2.0) -
                   renyi::renyi_entropy(tau, 2.0)),
          1e-9);
  // alpha -> 1 meets the von Neumann entropy
  w.check(std::abs(renyi::renyi_entropy(rho_a, 1.0 + 1e-4) -
                   div::von_neumann_entropy(rho_a)),
          1e-3);
  return w.value;
}

double suite_renyi_dpi(std::uint64_t seed, long index) {
  (void)index;
  Rng rng(seed);
  Worst w;
  Mat rho_ab = random_state(4, rng);
  double alpha = rng.uniform() < 0.5 ? 0.7 : 2.0;

  QuantumChannel lam = quantum::random_channel(2, 2, 2, rng.bits());
  auto [rho_ac, dims_ac] = quantum::apply_channel_at(rho_ab, {2, 2}, 1, lam);
  double cond_before = renyi::conditional_renyi(rho_ab, 2, 2, alpha).value;
  double cond_after = renyi::conditional_renyi(rho_ac, 2, 2, alpha).value;
  w.check(cond_before - cond_after, 1e-6);
  double mi_before = renyi::renyi_mutual_info(rho_ab, 2, 2, alpha).value;
  double mi_after = renyi::renyi_mutual_info(rho_ac, 2, 2, alpha).value;
  w.check(mi_after - mi_before, 1e-6);
  w.check(-mi_before, 1e-9);

  // product states carry no mutual information
  Mat prod = mat::tensor(random_state(2, rng), random_state(2, rng));
  w.check(std::abs(renyi::renyi_mutual_info(prod, 2, 2, alpha).value), 1e-6);

  // dimension bounds on a random tripartite state
  Mat rho_abc = random_state(8, rng);
  Mat rho_ab2 = mat::partial_trace(rho_abc, {2, 2, 2}, {0, 1});
  double cond_abc = renyi::conditional_renyi(rho_abc, 2, 4, alpha).value;
  double cond_ab = renyi::conditional_renyi(rho_ab2, 2, 2, alpha).value;
  w.check(cond_ab - cond_abc - 2.0, 1e-6);
  double mi_abc = renyi::renyi_mutual_info(rho_abc, 2, 4, alpha).value;
  double mi_ab = renyi::renyi_mutual_info(rho_ab2, 2, 2, alpha).value;
  w.check(mi_abc - mi_ab - 2.0, 1e-6);

  // tensor-ancilla invariance
  Mat sigma_c = random_state(2, rng);
  Mat rho_ab_c = mat::tensor(rho_ab, sigma_c);
  w.check(std::abs(renyi::conditional_renyi(rho_ab_c, 2, 4, alpha).value -
                   cond_before),
          1e-6);
  w.check(std::abs(renyi::renyi_mutual_info(rho_ab_c, 2, 4, alpha).value -
                   mi_before),
          1e-6);

  // classical registers: discarding X from the system cannot lower the
  // conditional entropy; extending the conditioner costs at most log|X|
  const int nx = 2;
  std::vector<double> px{0.6, 0.4};
  std::vector<Mat> blocks{random_state(4, rng), random_state(4, rng)};
  Mat rho_abx = Mat::Zero(8, 8);  // order (A, B, X)
  for (int xv = 0; xv < nx; ++xv) {
    Mat xx = Mat::Zero(nx, nx);
    xx(xv, xv) = 1.0;
    rho_abx += px[xv] * mat::tensor(blocks[xv], xx);
  }
  Mat rho_ab_avg = mat::partial_trace(rho_abx, {2, 2, 2}, {0, 1});
  // (AX | B): system grouping (A, X) given B requires order (A, X, B)
  Mat rho_axb = mat::permute_systems(rho_abx, {2, 2, 2}, {0, 2, 1});
  double cond_axb = renyi::conditional_renyi(rho_axb, 4, 2, alpha).value;
  double cond_avg = renyi::conditional_renyi(rho_ab_avg, 2, 2, alpha).value;
  w.check(cond_avg - cond_axb, 1e-6);
  // (A | BX) + log|X| >= (A | B)
  Mat rho_a_bx = rho_abx;  // order (A, B, X) with conditioner (B, X)
  double cond_a_bx = renyi::conditional_renyi(rho_a_bx, 2, 4, alpha).value;
  w.check(cond_avg - cond_a_bx - 1.0, 1e-6);
  // mutual information version
  double mi_a_bx = renyi::renyi_mutual_info(rho_a_bx, 2, 4, alpha).value;
  double mi_avg = renyi::renyi_mutual_info(rho_ab_avg, 2, 2, alpha).value;
  w.check(mi_a_bx - 1.0 - mi_avg, 1e-6);
  return w.value;
}

double suite_fidelity_bounds(std::uint64_t seed, long index) {
  (void)index;
  Rng rng(seed);
  Worst w;
  double alpha = 0.55 + 0.4 * rng.uniform();

  Mat rho_a = random_state(3, rng);
  Mat sigma_a = random_state(3, rng);
  w.check(-renyi::fidelity_bound_margin_entropy(rho_a, sigma_a, alpha), 1e-7);

  Mat rho_ab = random_state(4, rng);
  Mat sigma_ab = random_state(4, rng);
  w.check(-renyi::fidelity_bound_margin_conditional(rho_ab, sigma_ab, 2, 2,
                                                    alpha),
          1e-7);

  Mat u = quantum::random_unitary(2, rng);
  Mat local = mat::tensor(Mat::Identity(2, 2), u);
  Mat sigma_same_a = local * rho_ab * local.adjoint();
  w.check(-renyi::fidelity_bound_margin_mutual(rho_ab, sigma_same_a, 2, 2,
                                               alpha),
          1e-7);

  // same-marginal tripartite pair through a doubly traceless perturbation
  Mat rho_abc = random_state(8, rng);
  Mat delta = random_hermitian(8, rng);
  delta -= (delta.trace() / 8.0) * Mat::Identity(8, 8);
  Mat d_a = mat::partial_trace(delta, {2, 2, 2}, {1, 2});
  delta -= mat::embed(d_a / 2.0, {2, 2, 2}, {1, 2});
  Mat d_b = mat::partial_trace(delta, {2, 2, 2}, {0, 2});
  delta -= mat::embed(d_b / 2.0, {2, 2, 2}, {0, 2});
  double step = 0.02 / std::max(1.0, mat::max_abs(delta));
  Mat sigma_abc = rho_abc + step * delta;
  auto s = mat::eig_hermitian(sigma_abc);
  if (s.eigenvalues[s.dim() - 1] > 1e-6) {
    w.check(-renyi::fidelity_bound_margin_cmi(rho_abc, sigma_abc, 2, 2, 2,
                                              alpha),
            1e-7);
  }
  return w.value;
}

double suite_araki_lieb(std::uint64_t seed, long index) {
  (void)index;
  Rng rng(seed);
  Worst w;
  Mat rho_ab = random_state(4, rng);
  Mat rho_a = mat::partial_trace(rho_ab, {2, 2}, {0});
  for (double alpha : {0.6, 2.0}) {
    double beta = div::RenyiOrder::conjugate(alpha);
    double cond = renyi::conditional_renyi(rho_ab, 2, 2, alpha).value;
    w.check(-renyi::renyi_entropy(rho_a, beta) - cond, 1e-5);
    w.check(cond - renyi::renyi_entropy(rho_a, alpha), 1e-5);
  }

  // saturating construction and its explicit decomposition
  double lam0 = 0.2 + 0.6 * rng.uniform();
  double nu0 = 0.2 + 0.6 * rng.uniform();
  auto sat = conv::araki_lieb_saturating_state(lam0, nu0);
  w.check(mat::max_abs(mat::partial_trace(sat.eta0 * sat.eta1.adjoint(),
                                          {2, 4}, {0})),
          1e-12);
  for (double alpha : {0.6, 2.0}) {
    double beta = div::RenyiOrder::conjugate(alpha);
    double cond = renyi::conditional_renyi(sat.rho_ab, 2, 4, alpha).value;
    w.check(std::abs(cond + renyi::renyi_entropy(sat.rho_a, beta)), 1e-5);
  }
  // lower bound on the Renyi entanglement of formation is met with equality:
  // the decomposition's average entropy matches minus the conditional term
  double alpha_big = 2.0;
  double beta_small = div::RenyiOrder::conjugate(alpha_big);
  double avg = renyi::renyi_entropy(sat.rho_a, alpha_big);  // both members equal
  double cond_beta =
      renyi::conditional_renyi(sat.rho_ab, 2, 4, beta_small).value;
  w.check(std::abs(avg + cond_beta), 1e-5);
  return w.value;
}

// -------------------------------------------------------------- classical --

double suite_berry_esseen(std::uint64_t seed, long index) {
  (void)seed;
  (void)index;
  Worst w;
  classical::ClassicalDistribution p({0.8, 0.2}, true);
  classical::ClassicalDistribution q({0.5, 0.5}, true);
  double worst = classical::berry_esseen_check(p, q, {25, 100, 400});
  w.check(worst, 0.5);
  double d25 = classical::berry_esseen_check(p, q, {25});
  double d100 = classical::berry_esseen_check(p, q, {100});
  double d400 = classical::berry_esseen_check(p, q, {400});
  // the normalized ratio removes the 1/sqrt(n); quadrupling n should keep it
  // in a steady band
  w.require(d100 / d25 > 0.3 && d100 / d25 < 1.7);
  w.require(d400 / d100 > 0.3 && d400 / d100 < 1.7);
  return w.value;
}

double suite_iid_dp(std::uint64_t seed, long index) {
  Rng rng(seed);
  Worst w;
  int n = 1 + static_cast<int>(index % 20);
  double p0 = 0.05 + 0.9 * rng.uniform();
  classical::ClassicalDistribution p({p0, 1.0 - p0}, true);
  double gamma = (n * (p0 * std::log2(p0) + (1 - p0) * std::log2(1 - p0))) +
                 (rng.uniform() - 0.5) * n;
  double dp = classical::iid_tail(p, n, gamma);
  double brute = oracles::exhaustive_tail_d2(p0, 1.0 - p0, n, gamma);
  w.check(std::abs(dp - brute), 1e-12);

  // quantile inverts the CDF
  double eps = 0.001 + 0.998 * rng.uniform();
  double x = classical::gaussian_quantile(eps);
  w.check(std::abs(classical::gaussian_cdf(x) - eps), 1e-9);
  w.check(std::abs(classical::gaussian_cdf(x) -
                   oracles::gaussian_cdf_quadrature(x)),
          1e-9);
  w.check(std::abs(classical::gaussian_cdf(-x) - (1.0 - eps)), 1e-9);
  return w.value;
}

// ----------------------------------------------------------------- coding --

double suite_second_order(std::uint64_t seed, long index) {
  Rng rng(seed);
  Worst w;
  double eps = 0.05 + 0.9 * rng.uniform();
  double t = 0.05 + 0.9 * rng.uniform();
  double s1 = 0.3 + rng.uniform(), sg1 = 0.1 + rng.uniform();
  double s2 = s1 - 0.2 - 0.5 * rng.uniform(), sg2 = 0.1 + rng.uniform();

  int kind = static_cast<int>(index % 3);
  if (kind == 0) {
    // equal entropies: the solver root satisfies the defining equation
    std::vector<coding::ComponentStats> st{{t, s1, sg1}, {1 - t, s1, sg2}};
    double b = coding::second_order_rate_from_stats(st, s1, eps);
    double g = t * classical::gaussian_cdf(b / sg1) +
               (1 - t) * classical::gaussian_cdf(b / sg2);
    w.check(std::abs(g - (1.0 - eps)), 1e-8);
  } else if (kind == 1) {
    if (t <= eps) t = eps + 0.5 * (1 - eps);
    std::vector<coding::ComponentStats> st{{t, s1, sg1}, {1 - t, s2, sg2}};
    double a = coding::first_order_rate_from_stats(st, eps);
    w.check(std::abs(a - s1), 1e-12);
    double b = coding::second_order_rate_from_stats(st, a, eps);
    double closed = -sg1 * classical::gaussian_quantile(eps / t);
    w.check(std::abs(b - closed), 1e-8);
  } else {
    if (t >= eps) t = eps * rng.uniform();
    if (t <= 0) t = eps / 2;
    std::vector<coding::ComponentStats> st{{t, s1, sg1}, {1 - t, s2, sg2}};
    double a = coding::first_order_rate_from_stats(st, eps);
    w.check(std::abs(a - s2), 1e-12);
    double b = coding::second_order_rate_from_stats(st, a, eps);
    double closed = -sg2 * classical::gaussian_quantile((eps - t) / (1 - t));
    w.check(std::abs(b - closed), 1e-8);
  }

  // off-rate first order gives infinite second order of the right sign
  std::vector<coding::ComponentStats> st{{1.0, s1, sg1}};
  w.require(coding::second_order_rate_from_stats(st, s1 + 0.3, eps) == -kInf);
  w.require(coding::second_order_rate_from_stats(st, s1 - 0.3, eps) == kInf);

  // monotonicity of b in eps
  double b1 = coding::second_order_rate_from_stats(st, s1, 0.2);
  double b2 = coding::second_order_rate_from_stats(st, s1, 0.4);
  w.require(b1 > b2);
  return w.value;
}

double suite_pincer(std::uint64_t seed, long index) {
  (void)seed;
  Worst w;
  const double eps_grid[] = {0.1, 0.25, 0.5};
  double eps = eps_grid[index % 3];
  std::vector<double> spectrum{0.8, 0.2};
  double s = 0.721928094887362;
  double sg = 0.8;
  double b = -sg * classical::gaussian_quantile(eps);

  double prev_dev = kInf;
  for (int n : {500, 1000, 2000}) {
    double f = coding::achievability_fidelity(spectrum, n, b);
    if (n == 2000) w.check((1.0 - eps - 0.03) - f, 1e-12);
    double dev = std::abs(f - (1.0 - eps));
    w.require(dev <= prev_dev + 0.01);
    prev_dev = dev;
  }
  int n = 2000;
  double log2_m = n * s + std::sqrt(static_cast<double>(n)) * (b - 0.05);
  double bound = coding::hayashi_converse_bound_iid(spectrum, n, log2_m);
  w.check(bound - (1.0 - eps + 0.05), 1e-12);
  return w.value;
}

double suite_projector_code(std::uint64_t seed, long index) {
  Rng rng(seed);
  Worst w;
  int n = 1 + static_cast<int>(index % 4);
  // two-signal qubit source with a random overlap
  double p = 0.3 + 0.4 * rng.uniform();
  double theta = 0.3 + rng.uniform();
  CVec s0(2), s1(2);
  s0 << 1.0, 0.0;
  s1 << std::cos(theta), std::sin(theta);
  coding::QuantumSource src({p, 1 - p}, {s0, s1});

  coding::SourceCode ident = coding::identity_code(src, n);
  w.check(std::abs(coding::ensemble_avg_fidelity(src, ident) - 1.0), 1e-10);

  double b = -0.5 + rng.uniform();
  coding::SourceCode code = coding::projector_code(src, n, b);
  double fbar = coding::ensemble_avg_fidelity(src, code);
  // equals the projected mass of the n-fold source state
  Mat rho = src.source_state();
  Mat rho_n = rho;
  for (int k = 1; k < n; ++k) rho_n = mat::tensor(rho_n, rho);
  double mass = 1.0 - classical::iid_tail(
                          classical::ClassicalDistribution(src.spectrum(), true),
                          n, -n * src.entropy() -
                                 std::sqrt(static_cast<double>(n)) * b);
  w.check(std::abs(fbar - mass), 1e-9);
  // and the converse dominates it
  if (code.code_dim >= 1) {
    double bound = coding::hayashi_converse_bound(rho_n, code.code_dim);
    w.check(fbar - bound, 1e-9);
  }
  return w.value;
}

// --------------------------------------------------------------- converse --

conv::RedistributionProtocol random_protocol(Rng& rng, int n) {
  conv::RedistributionProtocol p;
  p.dims = {2, 2, 2, 2};
  p.n = n;
  p.k = 2;
  p.m = 2;
  p.q_dim = 1 << static_cast<int>(rng.index(3));  // 1, 2 or 4
  p.psi = quantum::random_pure(16, rng.bits()).amplitudes();
  long dan = 1L << n, dbn = 1L << n, dcn = 1L << n;
  auto env_for = [](long in, long out) {
    return static_cast<int>(std::max(2L, (in + out - 1) / out));
  };
  long enc_in = dan * dcn * p.k, enc_out = dcn * p.m * p.q_dim;
  long dec_in = p.q_dim * dbn * p.k, dec_out = p.m * dan * dbn;
  p.encoder = quantum::random_channel(static_cast<int>(enc_in),
                                      static_cast<int>(enc_out),
                                      env_for(enc_in, enc_out), rng.bits());
  p.decoder = quantum::random_channel(static_cast<int>(dec_in),
                                      static_cast<int>(dec_out),
                                      env_for(dec_in, dec_out), rng.bits());
  return p;
}

double suite_certification(std::uint64_t seed, long index) {
  Rng rng(seed);
  Worst w;
  int n = 1 + static_cast<int>(index % 2);
  conv::RedistributionProtocol p = random_protocol(rng, n);
  double f = conv::simulate(p);
  conv::BoundOptions opts;
  opts.certified = true;
  opts.opt.restarts = 3;
  opts.opt.max_iters = 300;
  for (double alpha : {0.7}) {
    conv::ConverseBounds b = conv::redistribution_bounds(
        p.psi, p.dims, p.q_rate(), p.e_rate(), p.n, alpha, opts);
    w.check(f - b.sum_rate, 1e-9);
    w.check(f - b.cond, 1e-9);
    w.check(f - b.mutual, 1e-9);
  }
  return w.value;
}

double suite_reduction_coherence(std::uint64_t seed, long index) {
  (void)index;
  Rng rng(seed);
  Worst w;
  conv::BoundOptions opts;
  opts.opt.seed = rng.bits();
  double alpha = 0.75;
  double q = 0.4 + rng.uniform();
  double e = 0.2 + rng.uniform();
  int n = 1 + static_cast<int>(rng.index(3));

  // source coding: A and R only
  CVec psi_ar = quantum::random_pure(4, rng.bits()).amplitudes();
  CVec psi_full = psi_ar;  // dims (2,1,1,2) index-compatible
  conv::ConverseBounds full =
      conv::redistribution_bounds(psi_full, {2, 1, 1, 2}, q, 0.0, n, alpha, opts);
  Mat rho_a = mat::partial_trace(psi_ar * psi_ar.adjoint(), {2, 2}, {0});
  auto sa = mat::eig_hermitian(rho_a);
  std::vector<double> spec{std::max(sa.eigenvalues[0], 0.0),
                           std::max(sa.eigenvalues[1], 0.0)};
  double beta = div::RenyiOrder::conjugate(alpha);
  double reduced = conv::source_coding_bound(spec, q, n, beta);
  w.check(std::abs(full.cond - reduced), 1e-10);

  // merging and splitting against the trivial-system redistribution forms
  CVec psi_abr = quantum::random_pure(8, rng.bits()).amplitudes();
  conv::MergingBounds mb =
      conv::coherent_merging_bounds(psi_abr, {2, 2, 2}, q, e, n, alpha, opts);
  conv::ConverseBounds mfull = conv::redistribution_bounds(
      psi_abr, {2, 2, 1, 2}, q, -e, n, alpha, opts);
  w.check(std::abs(mb.sum_rate - mfull.sum_rate), 1e-10);
  w.check(std::abs(mb.cond - mfull.cond), 1e-10);

  conv::SplittingBounds sb =
      conv::state_splitting_bounds(psi_abr, {2, 2, 2}, q, e, n, alpha, opts);
  conv::ConverseBounds sfull = conv::redistribution_bounds(
      psi_abr, {2, 1, 2, 2}, q, e, n, alpha, opts);
  w.check(std::abs(sb.sum_rate - sfull.sum_rate), 1e-10);
  w.check(std::abs(sb.mutual - sfull.mutual), 1e-10);

  // the sum-rate bracket approaches the conditional entropy as alpha -> 1
  CVec psi4 = quantum::random_pure(16, rng.bits()).amplitudes();
  Mat fullst = psi4 * psi4.adjoint();
  Mat rho_ab = mat::partial_trace(fullst, {2, 2, 2, 2}, {0, 1});
  Mat rho_b = mat::partial_trace(fullst, {2, 2, 2, 2}, {1});
  double target = div::von_neumann_entropy(rho_ab) -
                  div::von_neumann_entropy(rho_b);
  double a_near = 0.999;
  double b_near = div::RenyiOrder::conjugate(a_near);
  double bracket = renyi::renyi_entropy(rho_ab, b_near) -
                   renyi::renyi_entropy(rho_b, a_near);
  w.check(std::abs(bracket - target), 1e-2);
  return w.value;
}

double suite_efid(std::uint64_t seed, long index) {
  Rng rng(seed);
  Worst w;
  int d = 2 + static_cast<int>(rng.index(2));
  bool pure = (index % 3 == 0);
  quantum::DensityMatrix rho =
      pure ? quantum::DensityMatrix::from_pure(
                 quantum::random_pure(d, rng.bits()).amplitudes())
           : quantum::random_density(d, d, rng.bits());
  QuantumChannel noisy =
      quantum::depolarizing_channel(d, 0.3 + 0.4 * rng.uniform())
          .compose_after(quantum::random_channel(d, d, 2, rng.bits()));
  double fe = quantum::entanglement_fidelity(rho, noisy);
  double f = div::fidelity(rho.matrix(), noisy.apply(rho.matrix()));
  w.check(fe - f, 1e-9);
  auto s = mat::eig_hermitian(rho.matrix());
  double lam2 = s.dim() > 1 ? s.eigenvalues[1] : 0.0;
  if (lam2 <= 1e-9)
    w.check(std::abs(fe - f), 1e-9);
  else if (lam2 > 0.05)
    w.require(f - fe > 1e-9);
  return w.value;
}

}  // namespace

const std::vector<SuiteSpec>& registry() {
  static const std::vector<SuiteSpec> suites = {
      {"eig", 1000, suite_eig},
      {"matrix-ineq", 200, suite_matrix_ineq},
      {"quantum", 200, suite_quantum},
      {"dpi", 500, suite_dpi},
      {"alpha-mono", 200, suite_alpha_mono},
      {"limit-qre", 200, suite_limit_qre},
      {"premetric", 200, suite_premetric},
      {"convexity", 200, suite_convexity},
      {"ns", 300, suite_ns},
      {"dh-oracle", 100, suite_dh_oracle},
      {"ds-sandwich", 200, suite_ds_sandwich},
      {"duality", 100, suite_duality},
      {"subadditivity", 500, suite_subadditivity},
      {"entropy-duality", 200, suite_entropy_duality},
      {"renyi-dpi", 60, suite_renyi_dpi},
      {"fidelity-bounds", 120, suite_fidelity_bounds},
      {"araki-lieb", 40, suite_araki_lieb},
      {"berry-esseen", 1, suite_berry_esseen},
      {"iid-dp", 20, suite_iid_dp},
      {"second-order", 100, suite_second_order},
      {"pincer", 3, suite_pincer},
      {"projector-code", 20, suite_projector_code},
      {"certification", 200, suite_certification},
      {"reduction-coherence", 30, suite_reduction_coherence},
      {"efid", 100, suite_efid},
  };
  return suites;
}

const SuiteSpec* find(const std::string& name) {
  for (const auto& s : registry())
    if (s.name == name) return &s;
  return nullptr;
}

double tolerance_scale() {
  const char* env = std::getenv("QDIV_TOL_SCALE");
  if (!env) return 1.0;
  double v = std::atof(env);
  return v > 0 ? v : 1.0;
}

SuiteRun run_suite(const SuiteSpec& spec, std::uint64_t seed, long trials,
                   int jobs) {
  SuiteRun run;
  run.name = spec.name;
  run.tolerance = tolerance_scale();
  run.margins.assign(trials, 0.0);

  auto work = [&](long begin, long end) {
    for (long i = begin; i < end; ++i)
      run.margins[i] = spec.margin(derive_seed(seed, i), i);
  };
  if (jobs <= 1 || trials < 2) {
    work(0, trials);
  } else {
    int threads = std::min<long>(jobs, trials);
    std::vector<std::thread> pool;
    long chunk = (trials + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      long b = t * chunk;
      long e = std::min(trials, b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }
  run.worst = -kInf;
  for (double m : run.margins) run.worst = std::max(run.worst, m);
  run.pass = run.worst <= run.tolerance;
  return run;
}

}  // namespace qdiv::suites
