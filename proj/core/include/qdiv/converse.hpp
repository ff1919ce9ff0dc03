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

#ifndef QDIV_CONVERSE_HPP
#define QDIV_CONVERSE_HPP

#include <array>
#include <string>
#include <vector>

#include "qdiv/quantum.hpp"
#include "qdiv/renyi.hpp"

namespace qdiv::conv {

using mat::CVec;
using mat::Mat;

struct BoundOptions {
  // In certified mode every optimized term enters through its certified side,
  // so optimizer shortfall can only loosen a bound.
  bool certified = false;
  renyi::OptimizerParams opt;
};

/// The three fidelity bounds for state redistribution at one Renyi order:
/// against the sum rate q+e, and twice against the forward communication.
struct ConverseBounds {
  double sum_rate = 1.0;
  double cond = 1.0;
  double mutual = 1.0;
  double min() const { return std::min(sum_rate, std::min(cond, mutual)); }
};

/// psi is the single-copy purified state on (A, B, C, R) in that factor
/// order; q and e are rates in bits per copy.
ConverseBounds redistribution_bounds(const CVec& psi,
                                     const std::array<int, 4>& dims_abcr,
                                     double q, double e, int n, double alpha,
                                     const BoundOptions& opts = {});

/// Feedback variant: the sum-rate bound runs against q_total + e, the other
/// two against twice the forward communication.
ConverseBounds feedback_bounds(const CVec& psi,
                               const std::array<int, 4>& dims_abcr,
                               double q_forward, double q_total, double e,
                               int n, double alpha,
                               const BoundOptions& opts = {});

/// Reductions of the redistribution bounds; dims order (A, B, R) with the
/// factor conventions of each task.
double source_coding_bound(const std::vector<double>& spectrum, double q,
                           int n, double beta);

struct MergingBounds {
  double sum_rate = 1.0;
  double cond = 1.0;
};
MergingBounds coherent_merging_bounds(const CVec& psi_abr,
                                      const std::array<int, 3>& dims, double q,
                                      double e, int n, double alpha,
                                      const BoundOptions& opts = {});

struct SplittingBounds {
  double sum_rate = 1.0;
  double cond = 1.0;
  double mutual = 1.0;
};
SplittingBounds state_splitting_bounds(const CVec& psi_abr,
                                       const std::array<int, 3>& dims, double q,
                                       double e, int n, double alpha,
                                       const BoundOptions& opts = {});

/// Classical-communication bound for measurement compression; phi is the
/// ideal post-measurement state on (R, X, X', B).
double measurement_compression_bound(const Mat& phi_rxxb,
                                     const std::array<int, 4>& dims, double c,
                                     int n, double alpha,
                                     const BoundOptions& opts = {});

struct TightestExponent {
  double alpha_star = 0;
  double bound_star = 1;
  double exponent = 0;  // decay rate per copy, in bits
};

/// Scan of the sum-rate bound over an alpha grid in (1/2, 1).
TightestExponent tightest_exponent(const CVec& psi,
                                   const std::array<int, 4>& dims_abcr,
                                   double q, double e, int n,
                                   const std::vector<double>& alpha_grid,
                                   const BoundOptions& opts = {});

/// Mixed two-purification state on |A| = 2, |B| = 4 saturating the
/// conditional-entropy lower bound.
struct SaturatingState {
  Mat rho_ab;
  Mat rho_a;
  CVec eta0, eta1;
  std::vector<double> weights;  // (nu0, nu1)
};
SaturatingState araki_lieb_saturating_state(double lambda0, double nu0);

// --- Protocol simulation ---------------------------------------------------

/// Pure global state over labeled tensor factors; channels act through their
/// Stinespring isometries so the state stays pure and environments persist.
class PureRegister {
 public:
  void init(const CVec& amp, std::vector<int> dims,
            std::vector<std::string> labels);
  void append(const CVec& amp, std::vector<int> dims,
              std::vector<std::string> labels);
  void apply_channel(const std::vector<std::string>& in_labels,
                     const quantum::QuantumChannel& channel,
                     const std::vector<std::pair<std::string, int>>& out_systems,
                     const std::string& env_label);
  double overlap_fidelity(const CVec& target,
                          const std::vector<std::string>& target_labels) const;
  Mat reduced_density(const std::vector<std::string>& labels) const;
  const std::vector<int>& dims() const { return dims_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<int> positions_of(const std::vector<std::string>& labels) const;
  void move_to_front(const std::vector<int>& positions);
  CVec amp_;
  std::vector<int> dims_;
  std::vector<std::string> labels_;
};

/// Tensor power with factors regrouped by subsystem: (A..A, B..B, ...).
CVec tensor_power_grouped(const CVec& psi, const std::vector<int>& dims, int n);

struct RedistributionProtocol {
  CVec psi;                 // single copy on (A, B, C, R)
  std::array<int, 4> dims;  // dA, dB, dC, dR
  int n = 1;
  int k = 1;      // initial shared-entanglement Schmidt rank
  int m = 1;      // final Schmidt rank
  int q_dim = 1;  // total transmitted dimension |Q^n|
  quantum::QuantumChannel encoder;  // (A^n C^n T_A) -> (C'^n T'_A Q)
  quantum::QuantumChannel decoder;  // (Q B^n T_B) -> (T'_B A'^n B'^n)

  double q_rate() const { return std::log2(static_cast<double>(q_dim)) / n; }
  double e_rate() const {
    return (std::log2(static_cast<double>(k)) -
            std::log2(static_cast<double>(m))) / n;
  }
};

double simulate(const RedistributionProtocol& protocol);

struct FeedbackProtocol {
  CVec psi;
  std::array<int, 4> dims;
  int n = 1;
  int k = 1, m = 1;
  std::vector<int> q_dims;       // |Q_i|, one per round
  std::vector<int> qb_dims;      // |Q'_i|, one per round but the last
  std::vector<int> a_mem_dims;   // Alice memory after rounds 1..M-1
  std::vector<int> b_mem_dims;   // Bob memory after rounds 1..M-1
  std::vector<quantum::QuantumChannel> encoders;
  std::vector<quantum::QuantumChannel> decoders;

  int rounds() const { return static_cast<int>(encoders.size()); }
  double q_forward_rate() const;
  double q_total_rate() const;
  double e_rate() const {
    return (std::log2(static_cast<double>(k)) -
            std::log2(static_cast<double>(m))) / n;
  }
};

double simulate(const FeedbackProtocol& protocol);

struct MeasurementCompressionProtocol {
  CVec psi;                 // pure state on (R, A, B)
  std::array<int, 3> dims;  // dR, dA, dB
  std::vector<Mat> povm;    // measurement on A
  int m_dim = 1;            // shared randomness |M_A|
  int l_dim = 1;            // classical message |L|
  quantum::QuantumChannel encoder;  // (A M_A) -> (Xbar L)
  quantum::QuantumChannel decoder;  // (L B M_B) -> (Xhat B')

  double c_rate() const { return std::log2(static_cast<double>(l_dim)); }
  double r_rate() const { return std::log2(static_cast<double>(m_dim)); }
};

/// Ideal post-measurement state on (R, X, X', B).
Mat ideal_measured_state(const CVec& psi_rab, const std::array<int, 3>& dims,
                         const std::vector<Mat>& povm);

double simulate(const MeasurementCompressionProtocol& protocol);

}  // namespace qdiv::conv

#endif
