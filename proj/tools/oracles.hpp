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

// Independent oracles for the verification suites. These deliberately avoid
// the code paths they are used to check.

#ifndef QDIV_ORACLES_HPP
#define QDIV_ORACLES_HPP

#include <vector>

#include "qdiv/matcore.hpp"

namespace qdiv::oracles {

using mat::Mat;

/// Optimal type-II error for qubit pairs, minimized over the full test set
/// by an exact small LP per test direction with grid refinement over
/// directions. Returns beta (not its negative log); an upper bound on the
/// optimum since every probe is a feasible test.
double qubit_test_sweep_beta(const Mat& rho, const Mat& sigma, double eps);

/// Lagrange-dual certificate for the same testing problem:
/// max over mu >= 0 of mu (1 - eps) - tr(mu rho - sigma)_+, a concave
/// one-dimensional maximization whose value lower-bounds the optimal beta
/// (and equals it by strong duality).
double np_dual_beta(const Mat& rho, const Mat& sigma, double eps);

/// Exact classical Neyman-Pearson type-II error via likelihood-ratio
/// ordering with a randomized boundary atom.
double classical_np_beta(const std::vector<double>& p,
                         const std::vector<double>& q, double eps);

/// Brute-force minimization over diagonal conditioners on a simplex grid for
/// classical-classical (diagonal) bipartite states, dB = 2.
double diagonal_conditional_objective(const std::vector<double>& joint,
                                      int dim_a, double alpha, double s);
double diagonal_conditional_grid_min(const std::vector<double>& joint,
                                     int dim_a, double alpha, int grid_points);

/// Grid + refinement minimization of the sandwiched divergence against
/// rho_A (x) sigma_B over the qubit Bloch ball.
double mutual_info_grid_min(const Mat& rho_ab, int dim_a, double alpha,
                            int grid_points);

/// Standard normal CDF by adaptive Simpson quadrature of the density.
double gaussian_cdf_quadrature(double z);

/// Pr{ sum log2 p <= gamma } for d = 2 by exhaustive 2^n enumeration.
double exhaustive_tail_d2(double p0, double p1, int n, double gamma_bits);

}  // namespace qdiv::oracles

#endif
