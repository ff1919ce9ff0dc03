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

#ifndef QDIV_MATCORE_HPP
#define QDIV_MATCORE_HPP

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "qdiv/errors.hpp"

namespace qdiv::mat {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Tolerances. Relative scales are spelled out at each use site.
inline constexpr double kHermTol = 1e-12;
inline constexpr double kSupportTol = 1e-12;       // eigenvalue counts as zero below kSupportTol * lambda_max
inline constexpr double kZeroBoundaryTol = 1e-12;  // band around 0 shared by {H>=0} and {H<=0}

double max_abs(const Mat& X);
bool all_finite(const Mat& X);
void check_hermitian(const Mat& H, double tol = kHermTol);
double default_cluster_tol(const Mat& H);  // 1e-9 * max(1, max|eig H|) via max_abs proxy

/// Eigen-data of a Hermitian operator, eigenvalues in decreasing order,
/// together with the grouping of near-degenerate eigenvalues into clusters.
struct SpectralDecomposition {
  RVec eigenvalues;  // decreasing
  Mat eigenvectors;  // columns, unitary
  std::vector<std::pair<int, int>> clusters;  // half-open index ranges [begin, end)

  int dim() const { return static_cast<int>(eigenvalues.size()); }
  int distinct_count() const { return static_cast<int>(clusters.size()); }
  Mat cluster_projector(int k) const;
  Mat reconstruct() const;
};

SpectralDecomposition eig_hermitian(const Mat& H, double cluster_tol = -1.0);

/// f applied to the spectrum. With support_only, eigenvalues below the
/// support threshold map to 0 and f is never evaluated there; required for
/// negative or fractional powers of singular positive operators.
Mat matrix_function(const Mat& H, const std::function<double(double)>& f,
                    bool support_only = false);

/// H^p with the support convention applied automatically whenever p <= 0 or
/// p is non-integral (so 0^p is never evaluated outside the support).
Mat matrix_power(const Mat& H, double p);

Mat support_projector(const Mat& H);
int support_rank(const Mat& H);

Mat tensor(const Mat& A, const Mat& B);

/// Partial trace over the factors NOT listed in `keep`. `dims` lists the
/// tensor factor dimensions in order; `keep` holds factor indices to retain.
Mat partial_trace(const Mat& X, const std::vector<int>& dims,
                  const std::vector<int>& keep);

/// Lift an operator acting on the factors in `positions` to the full space.
Mat embed(const Mat& X, const std::vector<int>& dims,
          const std::vector<int>& positions);

/// Reorder tensor factors: perm[k] is the old position of new factor k.
Mat permute_systems(const Mat& X, const std::vector<int>& dims,
                    const std::vector<int>& perm);
CVec permute_vector(const CVec& v, const std::vector<int>& dims,
                    const std::vector<int>& perm);

enum class Relation { GreaterEqual, Greater, LessEqual, Less };

/// Projector onto the span of eigenvectors whose eigenvalue satisfies the
/// relation against 0. Eigenvalues within the zero boundary band belong to
/// both closed projectors and to neither strict one.
Mat spectral_projector(const Mat& H, Relation rel);

/// tr(A - B)_+ for positive operators of equal dimension.
double positive_part_trace(const Mat& A, const Mat& B);

/// Pinching of rho in the eigenvalue clusters of sigma.
Mat pinch(const Mat& sigma, const Mat& rho, double cluster_tol = -1.0);

double schatten_norm(const Mat& X, double p);

/// Sum of the M largest eigenvalues.
double top_m_eigensum(const Mat& rho, int M);

/// True iff x is majorized by y (prefix sums of sorted x below those of y,
/// equal totals). Shorter vector is zero-padded.
bool is_majorized(std::vector<double> x, std::vector<double> y,
                  double tol = 1e-10);

}  // namespace qdiv::mat

#endif
