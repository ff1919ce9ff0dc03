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

#ifndef QDIV_DIVERGENCE_HPP
#define QDIV_DIVERGENCE_HPP

#include <limits>
#include <utility>

#include "qdiv/matcore.hpp"
#include "qdiv/quantum.hpp"

namespace qdiv::div {

using mat::Mat;

/// Order parameter of the Renyi family with its derived exponents.
struct RenyiOrder {
  double alpha;
  explicit RenyiOrder(double a);
  double gamma() const { return (1.0 - alpha) / (2.0 * alpha); }
  double beta() const;  // Hoelder conjugate: 1/alpha + 1/beta = 2
  static double conjugate(double alpha);
};

/// Divergences are values in bits; +infinity is a first-class value that
/// marks a failed support condition, never an exception.
struct DivergenceValue {
  double value = 0.0;
  bool is_finite = true;
  bool support_condition_met = true;

  static DivergenceValue finite(double v) { return {v, true, true}; }
  static DivergenceValue infinite() {
    return {std::numeric_limits<double>::infinity(), false, false};
  }
  double or_inf() const {
    return is_finite ? value : std::numeric_limits<double>::infinity();
  }
};

// Support relations decided through the support projectors (relative
// eigenvalue threshold mat::kSupportTol).
bool support_contained(const Mat& rho, const Mat& sigma);
bool supports_overlap(const Mat& rho, const Mat& sigma);

double von_neumann_entropy(const Mat& rho);

/// Umegaki relative entropy (bits) and the information variance (bits^2).
DivergenceValue qre(const Mat& rho, const Mat& sigma);
double qiv(const Mat& rho, const Mat& sigma);

/// alpha-relative Renyi entropy, alpha >= 0, alpha != 1.
DivergenceValue rre(const Mat& rho, const Mat& sigma, double alpha);

/// Sandwiched trace functional and divergence, alpha > 0, alpha != 1.
double srd_q(const Mat& rho, const Mat& sigma, double alpha);
DivergenceValue srd(const Mat& rho, const Mat& sigma, double alpha);

/// alpha -> 0 limit, evaluated near 0 with a linear extrapolation step.
double srd_zero_limit(const Mat& rho, const Mat& sigma);

/// Two-parameter alpha-z family; z = 1 is rre, z = alpha is srd.
DivergenceValue alpha_z(const Mat& rho, const Mat& sigma, double alpha,
                        double z);

double dmin(const Mat& rho, const Mat& sigma);
DivergenceValue dmax(const Mat& rho, const Mat& sigma);

double fidelity(const Mat& rho, const Mat& sigma);
double trace_distance(const Mat& rho, const Mat& sigma);

/// Hypothesis testing relative entropy at type-I budget eps, solved through
/// the quantum Neyman-Pearson tests with a fractional weight on the kernel.
double hypothesis_testing_re(const Mat& rho, const Mat& sigma, double eps);

struct InfoSpectrumOptions {
  double lo = -64.0;
  double hi = 64.0;
  double coarse_step = 0.128;
  double final_step = 1e-4;
};

/// Threshold-based information spectrum relative entropy; grid scan from the
/// top with two refinement passes (no monotonicity assumption).
double info_spectrum_ds(const Mat& rho, const Mat& sigma, double eps,
                        const InfoSpectrumOptions& opt = {});

/// Positive-part variants; bisection on the monotone trace of the positive
/// part.
double underline_ds(const Mat& rho, const Mat& sigma, double eps);
double overline_ds(const Mat& rho, const Mat& sigma, double eps);

/// The stationary operator of the variational form of the sandwiched trace
/// functional, and the variational objective itself.
Mat frank_lieb_optimizer(const Mat& rho, const Mat& sigma, double alpha);
double frank_lieb_objective(const Mat& h, const Mat& rho, const Mat& sigma,
                            double alpha);

/// Divergence gap across a channel together with the operator-norm residual
/// of the algebraic equality condition.
std::pair<double, double> dpi_gap_and_residual(
    const Mat& rho, const Mat& sigma, const quantum::QuantumChannel& channel,
    double alpha);

}  // namespace qdiv::div

#endif
