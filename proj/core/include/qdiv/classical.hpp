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

#ifndef QDIV_CLASSICAL_HPP
#define QDIV_CLASSICAL_HPP

#include <tuple>
#include <utility>
#include <vector>

#include "qdiv/matcore.hpp"

namespace qdiv::classical {

using mat::Mat;

/// Finite nonnegative weight vector; normalized flags a proper distribution.
struct ClassicalDistribution {
  std::vector<double> weights;
  bool normalized = false;

  ClassicalDistribution(std::vector<double> w, bool require_normalized);
  double total() const;
  size_t size() const { return weights.size(); }
};

struct SecondOrderStats {
  double d_bits = 0.0;   // first order (bits)
  double v_bits2 = 0.0;  // information variance (bits^2)
  double t3 = 0.0;       // third absolute central moment
};

/// Classical image of a pair of operators on [d] x [d]; preserves the first
/// two relative-entropy moments.
std::pair<ClassicalDistribution, ClassicalDistribution> nussbaum_szkola(
    const Mat& rho, const Mat& sigma);

double kl(const ClassicalDistribution& p, const ClassicalDistribution& q);
double info_variance(const ClassicalDistribution& p,
                     const ClassicalDistribution& q);
double third_moment(const ClassicalDistribution& p,
                    const ClassicalDistribution& q);
SecondOrderStats pair_stats(const ClassicalDistribution& p,
                            const ClassicalDistribution& q);

double gaussian_cdf(double z);
double gaussian_quantile(double eps);

/// Atoms (value, mass) of the distribution of sums of n i.i.d. draws of a
/// finite-valued variable, exact via type enumeration; sorted by value with
/// equal values merged.
std::vector<std::pair<double, double>> iid_sum_atoms(
    const std::vector<double>& values, const std::vector<double>& probs,
    int n);

/// Pr{ sum of values <= threshold } for n i.i.d. draws; boundary atoms
/// within 1e-12 relative of the threshold count as inside.
double iid_sum_tail(const std::vector<double>& values,
                    const std::vector<double>& probs, int n, double threshold);

/// Pr{ sum_i log2 P(X_i) <= gamma_bits } with X_i ~ P.
double iid_tail(const ClassicalDistribution& p, int n, double gamma_bits);

/// Largest normalized deviation sup_z |F_{Y_n}(z) - Phi(z)| * sigma^3
/// sqrt(n) / t3 over the given blocklengths.
double berry_esseen_check(const ClassicalDistribution& p,
                          const ClassicalDistribution& q,
                          const std::vector<int>& n_list);

/// One-shot classical information spectrum relative entropy.
double classical_ds(const ClassicalDistribution& p,
                    const ClassicalDistribution& q, double eps);

/// (exact, expansion): the exact n-fold information spectrum value via the
/// type DP, and the two-term Gaussian expansion.
std::pair<double, double> second_order_classical(const ClassicalDistribution& p,
                                                 const ClassicalDistribution& q,
                                                 int n, double eps);

/// (lhs, mid, rhs) of the classical-quantum information spectrum sandwich at
/// budget (eps, delta, eta); v is the number of distinct eigenvalues of
/// sigma.
std::tuple<double, double, double> quantum_ds_bounds_check(const Mat& rho,
                                                           const Mat& sigma,
                                                           double eps,
                                                           double delta,
                                                           double eta);

/// tr(rho^n {rho^n <= 2^(-na+sqrt(n)C)}) for each n, computed classically
/// from the spectrum.
std::vector<double> corollary_428_values(const ClassicalDistribution& p_rho,
                                         double a, double c,
                                         const std::vector<int>& n_list);

/// Figure-reproduction rows (n, exact, expansion, bound) where bound is the
/// running maximum of |exact - expansion|; header "n,exact,expansion,bound".
void write_second_order_csv(std::ostream& out, const ClassicalDistribution& p,
                            const ClassicalDistribution& q,
                            const std::vector<int>& n_list, double eps);

}  // namespace qdiv::classical

#endif
