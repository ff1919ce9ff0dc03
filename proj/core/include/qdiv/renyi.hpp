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

#ifndef QDIV_RENYI_HPP
#define QDIV_RENYI_HPP

#include <cstdint>

#include "qdiv/divergence.hpp"
#include "qdiv/matcore.hpp"
#include "qdiv/quantum.hpp"

namespace qdiv::renyi {

using mat::Mat;

struct OptimizerParams {
  std::uint64_t seed = 1;
  int restarts = 5;  // random starts in addition to the warm start
  int max_iters = 800;
  double tol = 1e-10;        // relative objective change
  int tol_streak = 5;        // consecutive small changes before stopping
  double grad_step = 1e-6;   // central-difference step on the state manifold
  double step0 = 0.5;        // initial exponentiated-gradient step
  int outer_iters = 60;      // ascent iterations for input-state searches
};

/// Result of a min/max search over states. Every reported minimum is an
/// upper bound on the true minimum (the probe is feasible) and every
/// reported maximum a lower bound, converged or not.
struct OptimizerReport {
  double value = 0.0;
  Mat argmin_state;
  int iterations = 0;
  int restarts = 0;
  bool converged = false;
  double final_step_norm = 0.0;
};

/// Renyi entropy (1/(1-alpha)) log2 tr rho^alpha; alpha = 1 is von Neumann,
/// alpha = 0 the log rank.
double renyi_entropy(const Mat& rho, double alpha);

/// Conditional Renyi entropy of rho_AB: -min over sigma_B of the sandwiched
/// divergence against 1_A (x) sigma_B. The reported value is a certified
/// lower bound on the true conditional entropy.
OptimizerReport conditional_renyi(const Mat& rho_ab, int dim_a, int dim_b,
                                  double alpha,
                                  const OptimizerParams& params = {});

/// Renyi mutual information of rho_AB: min over sigma_B against
/// rho_A (x) sigma_B. The reported value is an upper bound on the true one.
OptimizerReport renyi_mutual_info(const Mat& rho_ab, int dim_a, int dim_b,
                                  double alpha,
                                  const OptimizerParams& params = {});

/// Conditional Renyi mutual information, direct 2-alpha-norm formula (no
/// optimization). Requires full-support rho_BC unless regularize is set.
double renyi_cmi(const Mat& rho_abc, int dim_a, int dim_b, int dim_c,
                 double alpha, bool regularize = false);

// Margins of the fidelity bounds; each is LHS - (2 alpha / (1 - alpha)) log F
// and is nonnegative up to optimizer slack. alpha in (1/2, 1).
double fidelity_bound_margin_entropy(const Mat& rho_a, const Mat& sigma_a,
                                     double alpha);
double fidelity_bound_margin_conditional(const Mat& rho_ab, const Mat& sigma_ab,
                                         int dim_a, int dim_b, double alpha,
                                         const OptimizerParams& params = {});
double fidelity_bound_margin_mutual(const Mat& rho_ab, const Mat& sigma_ab,
                                    int dim_a, int dim_b, double alpha,
                                    const OptimizerParams& params = {});
double fidelity_bound_margin_cmi(const Mat& rho_abc, const Mat& sigma_abc,
                                 int dim_a, int dim_b, int dim_c, double alpha);

/// One-shot Renyi coherent information of a channel: max over pure inputs of
/// minus the conditional Renyi entropy of the reference given the output.
/// The reported value is a certified lower bound on the maximum.
OptimizerReport renyi_coherent_info(const quantum::QuantumChannel& channel,
                                    double alpha,
                                    const OptimizerParams& params = {});

}  // namespace qdiv::renyi

#endif
