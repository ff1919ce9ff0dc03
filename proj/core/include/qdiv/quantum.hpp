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

#ifndef QDIV_QUANTUM_HPP
#define QDIV_QUANTUM_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "qdiv/matcore.hpp"
#include "qdiv/rng.hpp"

namespace qdiv::quantum {

using mat::cplx;
using mat::CVec;
using mat::Mat;
using mat::RVec;

inline constexpr double kPsdTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kTpTol = 1e-10;
inline constexpr double kNormTol = 1e-12;

/// Positive semidefinite operator, validated on construction.
class PositiveOperator {
 public:
  explicit PositiveOperator(Mat m);
  const Mat& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  double trace() const { return m_.trace().real(); }

 private:
  Mat m_;
};

/// Positive semidefinite operator of unit trace.
class DensityMatrix {
 public:
  explicit DensityMatrix(Mat m);
  static DensityMatrix from_pure(const CVec& psi);
  const Mat& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  Mat m_;
};

/// Unit vector in a finite-dimensional Hilbert space.
class PureStateVector {
 public:
  explicit PureStateVector(CVec amplitudes);
  const CVec& amplitudes() const { return amp_; }
  int dim() const { return static_cast<int>(amp_.size()); }
  Mat projector() const { return amp_ * amp_.adjoint(); }

 private:
  CVec amp_;
};

/// Positive operator-valued measure: positive elements resolving the identity.
struct Povm {
  std::vector<Mat> elements;
  explicit Povm(std::vector<Mat> els);
  int dim() const { return static_cast<int>(elements.front().rows()); }
  int outcomes() const { return static_cast<int>(elements.size()); }
};

/// Completely positive trace-preserving map in Kraus form.
class QuantumChannel {
 public:
  QuantumChannel() = default;  // empty placeholder; using it throws
  explicit QuantumChannel(std::vector<Mat> kraus, double tp_tol = kTpTol);

  /// Recovery-style maps are trace preserving only on a subspace; `proj`
  /// is the projector the Kraus sum must reproduce.
  static QuantumChannel trace_preserving_on(std::vector<Mat> kraus,
                                            const Mat& proj);

  int in_dim() const { return in_; }
  int out_dim() const { return out_; }
  int env_dim() const { return static_cast<int>(kraus_.size()); }
  const std::vector<Mat>& kraus() const { return kraus_; }

  Mat apply(const Mat& x) const;
  Mat adjoint_apply(const Mat& y) const;

  /// Stinespring isometry V : in -> env (x) out, built by stacking the Kraus
  /// blocks; satisfies tr_env(V x V^dag) = apply(x).
  Mat stinespring() const;

  QuantumChannel compose_after(const QuantumChannel& inner) const;

 private:
  std::vector<Mat> kraus_;
  int in_ = 0, out_ = 0;
};

// --- State constructions -------------------------------------------------

/// Purification on dim x rank; tracing out the second factor recovers rho.
PureStateVector purify(const DensityMatrix& rho);

struct SchmidtDecomposition {
  RVec coefficients;  // decreasing, sum of squares = squared norm
  Mat basis_a;        // columns
  Mat basis_b;        // columns
  int rank = 0;
  CVec reconstruct(int dim_a, int dim_b) const;
};

SchmidtDecomposition schmidt(const CVec& psi, int dim_a, int dim_b);

Mat maximally_entangled(int dim);  // projector of the rank-dim MES
CVec maximally_entangled_vector(int dim);
Mat completely_mixed(int dim);

// --- Random fixtures (deterministic per seed) ----------------------------

Mat ginibre(int rows, int cols, Rng& rng);
Mat random_unitary(int dim, Rng& rng);
DensityMatrix random_density(int dim, int rank, std::uint64_t seed);
PureStateVector random_pure(int dim, std::uint64_t seed);
QuantumChannel random_channel(int in_dim, int out_dim, int env_dim,
                              std::uint64_t seed);

// --- Channel constructions ------------------------------------------------

QuantumChannel identity_channel(int dim);
QuantumChannel unitary_channel(const Mat& u);
QuantumChannel depolarizing_channel(int dim, double p);
QuantumChannel dephasing_channel(int dim, double p);
QuantumChannel pinching_channel(const Mat& sigma);
QuantumChannel measurement_channel(const Povm& povm);

/// Apply a channel to one tensor factor; returns the new operator and the
/// updated dimension list (the factor's dimension may change).
std::pair<Mat, std::vector<int>> apply_channel_at(
    const Mat& rho, const std::vector<int>& dims, int position,
    const QuantumChannel& channel);

// --- Recovery and fidelity ------------------------------------------------

/// Petz recovery map of (sigma, channel), defined on the support of
/// channel(sigma).
QuantumChannel petz_recovery(const Mat& sigma, const QuantumChannel& channel);

double entanglement_fidelity(const DensityMatrix& rho,
                             const QuantumChannel& channel);

}  // namespace qdiv::quantum

#endif
