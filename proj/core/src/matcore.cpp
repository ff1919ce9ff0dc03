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

#include "qdiv/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qdiv::mat {

double max_abs(const Mat& X) {
  if (X.size() == 0) return 0.0;
  return X.cwiseAbs().maxCoeff();
}

bool all_finite(const Mat& X) {
  for (Eigen::Index j = 0; j < X.cols(); ++j)
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
      const cplx& z = X(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  return true;
}

void check_hermitian(const Mat& H, double tol) {
  if (H.rows() != H.cols())
    throw NonHermitianError("operator is not square");
  if (!all_finite(H)) throw NonHermitianError("operator has non-finite entries");
  double dev = max_abs(H - H.adjoint());
  if (dev > tol * std::max(1.0, max_abs(H)))
    throw NonHermitianError("Hermiticity deviation " + std::to_string(dev));
}

double default_cluster_tol(const Mat& H) {
  return 1e-9 * std::max(1.0, max_abs(H));
}

Mat SpectralDecomposition::cluster_projector(int k) const {
  auto [b, e] = clusters.at(k);
  const Mat block = eigenvectors.middleCols(b, e - b);
  return block * block.adjoint();
}

Mat SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
}

SpectralDecomposition eig_hermitian(const Mat& H, double cluster_tol) {
  check_hermitian(H);
  if (cluster_tol < 0) cluster_tol = default_cluster_tol(H);

  Eigen::SelfAdjointEigenSolver<Mat> solver(H);
  if (solver.info() != Eigen::Success)
    throw NoConvergenceError("Hermitian eigensolver did not converge");

  const int d = static_cast<int>(H.rows());
  SpectralDecomposition out;
  out.eigenvalues.resize(d);
  out.eigenvectors.resize(d, d);
  // Eigen returns increasing order; flip to decreasing.
  for (int i = 0; i < d; ++i) {
    out.eigenvalues[i] = solver.eigenvalues()[d - 1 - i];
    out.eigenvectors.col(i) = solver.eigenvectors().col(d - 1 - i);
  }

  // Greedy grouping keyed to the cluster's top eigenvalue so the
  // within-cluster spread never exceeds cluster_tol.
  int begin = 0;
  for (int i = 1; i <= d; ++i) {
    if (i == d || out.eigenvalues[begin] - out.eigenvalues[i] > cluster_tol) {
      out.clusters.emplace_back(begin, i);
      begin = i;
    }
  }
  return out;
}

Mat matrix_function(const Mat& H, const std::function<double(double)>& f,
                    bool support_only) {
  SpectralDecomposition s = eig_hermitian(H);
  const int d = s.dim();
  double lam_max = 0.0;
  for (int i = 0; i < d; ++i) lam_max = std::max(lam_max, std::abs(s.eigenvalues[i]));
  RVec mapped(d);
  for (int i = 0; i < d; ++i) {
    double lam = s.eigenvalues[i];
    if (support_only && std::abs(lam) <= kSupportTol * lam_max) {
      mapped[i] = 0.0;
      continue;
    }
    double y = f(lam);
    if (!std::isfinite(y))
      throw DomainError("function not finite at in-support eigenvalue " +
                        std::to_string(lam));
    mapped[i] = y;
  }
  return s.eigenvectors * mapped.asDiagonal() * s.eigenvectors.adjoint();
}

Mat matrix_power(const Mat& H, double p) {
  bool needs_support = (p <= 0.0) || (p != std::floor(p));
  if (p == 0.0) {
    // H^0 is the support projector.
    return support_projector(H);
  }
  return matrix_function(
      H, [p](double x) { return std::pow(x, p); }, needs_support);
}

Mat support_projector(const Mat& H) {
  SpectralDecomposition s = eig_hermitian(H);
  const int d = s.dim();
  double lam_max = 0.0;
  for (int i = 0; i < d; ++i) lam_max = std::max(lam_max, std::abs(s.eigenvalues[i]));
  Mat P = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    if (std::abs(s.eigenvalues[i]) > kSupportTol * lam_max) {
      P += s.eigenvectors.col(i) * s.eigenvectors.col(i).adjoint();
    }
  }
  return P;
}

int support_rank(const Mat& H) {
  SpectralDecomposition s = eig_hermitian(H);
  double lam_max = 0.0;
  for (int i = 0; i < s.dim(); ++i)
    lam_max = std::max(lam_max, std::abs(s.eigenvalues[i]));
  int r = 0;
  for (int i = 0; i < s.dim(); ++i)
    if (std::abs(s.eigenvalues[i]) > kSupportTol * lam_max) ++r;
  return r;
}

Mat tensor(const Mat& A, const Mat& B) {
  Mat out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return out;
}

namespace {

// Strides for row-major composite indexing: factor 0 is the most significant.
std::vector<long> strides_of(const std::vector<int>& dims) {
  std::vector<long> st(dims.size());
  long acc = 1;
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    st[k] = acc;
    acc *= dims[k];
  }
  return st;
}

long product(const std::vector<int>& dims) {
  long p = 1;
  for (int d : dims) p *= d;
  return p;
}

// Enumerate composite indices of the sub-collection `subset` (positions into
// dims) as offsets into the full index space.
std::vector<long> subset_offsets(const std::vector<int>& dims,
                                 const std::vector<int>& subset) {
  auto st = strides_of(dims);
  std::vector<long> offs{0};
  for (int pos : subset) {
    std::vector<long> next;
    next.reserve(offs.size() * dims[pos]);
    for (long base : offs)
      for (int a = 0; a < dims[pos]; ++a) next.push_back(base + a * st[pos]);
    offs = std::move(next);
  }
  return offs;
}

}  // namespace

Mat partial_trace(const Mat& X, const std::vector<int>& dims,
                  const std::vector<int>& keep) {
  long D = product(dims);
  if (X.rows() != D || X.cols() != D)
    throw DimMismatchError("partial_trace: dims do not match operator size");
  std::vector<int> discard;
  for (int k = 0; k < static_cast<int>(dims.size()); ++k)
    if (std::find(keep.begin(), keep.end(), k) == keep.end())
      discard.push_back(k);

  auto keep_offs = subset_offsets(dims, keep);
  auto disc_offs = subset_offsets(dims, discard);
  const long Dk = static_cast<long>(keep_offs.size());

  Mat Y = Mat::Zero(Dk, Dk);
  for (long a = 0; a < Dk; ++a)
    for (long b = 0; b < Dk; ++b) {
      cplx acc(0, 0);
      for (long e : disc_offs) acc += X(keep_offs[a] + e, keep_offs[b] + e);
      Y(a, b) = acc;
    }
  return Y;
}

Mat embed(const Mat& X, const std::vector<int>& dims,
          const std::vector<int>& positions) {
  auto keep_offs = subset_offsets(dims, positions);
  std::vector<int> rest;
  for (int k = 0; k < static_cast<int>(dims.size()); ++k)
    if (std::find(positions.begin(), positions.end(), k) == positions.end())
      rest.push_back(k);
  auto rest_offs = subset_offsets(dims, rest);

  const long Dk = static_cast<long>(keep_offs.size());
  if (X.rows() != Dk || X.cols() != Dk)
    throw DimMismatchError("embed: operator size does not match positions");

  long D = product(dims);
  Mat Y = Mat::Zero(D, D);
  for (long a = 0; a < Dk; ++a)
    for (long b = 0; b < Dk; ++b) {
      if (X(a, b) == cplx(0, 0)) continue;
      for (long e : rest_offs) Y(keep_offs[a] + e, keep_offs[b] + e) = X(a, b);
    }
  return Y;
}

namespace {

std::vector<long> permutation_map(const std::vector<int>& dims,
                                  const std::vector<int>& perm) {
  std::vector<int> new_dims(perm.size());
  for (size_t k = 0; k < perm.size(); ++k) new_dims[k] = dims[perm[k]];
  auto st_old = strides_of(dims);
  auto st_new = strides_of(new_dims);
  long D = product(dims);
  std::vector<long> map(D);
  std::vector<int> digits(dims.size());
  for (long i = 0; i < D; ++i) {
    long rem = i;
    for (size_t k = 0; k < dims.size(); ++k) {
      digits[k] = static_cast<int>(rem / st_old[k]);
      rem %= st_old[k];
    }
    long j = 0;
    for (size_t k = 0; k < perm.size(); ++k) j += digits[perm[k]] * st_new[k];
    map[i] = j;
  }
  return map;
}

}  // namespace

Mat permute_systems(const Mat& X, const std::vector<int>& dims,
                    const std::vector<int>& perm) {
  auto map = permutation_map(dims, perm);
  Mat Y(X.rows(), X.cols());
  for (long i = 0; i < X.rows(); ++i)
    for (long j = 0; j < X.cols(); ++j) Y(map[i], map[j]) = X(i, j);
  return Y;
}

CVec permute_vector(const CVec& v, const std::vector<int>& dims,
                    const std::vector<int>& perm) {
  auto map = permutation_map(dims, perm);
  CVec w(v.size());
  for (long i = 0; i < v.size(); ++i) w[map[i]] = v[i];
  return w;
}

Mat spectral_projector(const Mat& H, Relation rel) {
  SpectralDecomposition s = eig_hermitian(H);
  const int d = s.dim();
  double lam_max = 0.0;
  for (int i = 0; i < d; ++i) lam_max = std::max(lam_max, std::abs(s.eigenvalues[i]));
  double band = kZeroBoundaryTol * lam_max;
  Mat P = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    double lam = s.eigenvalues[i];
    bool in = false;
    switch (rel) {
      case Relation::GreaterEqual: in = lam >= -band; break;
      case Relation::Greater:      in = lam > band;   break;
      case Relation::LessEqual:    in = lam <= band;  break;
      case Relation::Less:         in = lam < -band;  break;
    }
    if (in) P += s.eigenvectors.col(i) * s.eigenvectors.col(i).adjoint();
  }
  return P;
}

double positive_part_trace(const Mat& A, const Mat& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw DimMismatchError("positive_part_trace: dimension mismatch");
  SpectralDecomposition s = eig_hermitian(A - B);
  double acc = 0.0;
  for (int i = 0; i < s.dim(); ++i) acc += std::max(s.eigenvalues[i], 0.0);
  return acc;
}

Mat pinch(const Mat& sigma, const Mat& rho, double cluster_tol) {
  if (sigma.rows() != rho.rows() || sigma.cols() != rho.cols())
    throw DimMismatchError("pinch: dimension mismatch");
  SpectralDecomposition s = eig_hermitian(sigma, cluster_tol);
  Mat out = Mat::Zero(rho.rows(), rho.cols());
  for (int k = 0; k < s.distinct_count(); ++k) {
    Mat P = s.cluster_projector(k);
    out += P * rho * P;
  }
  return out;
}

double schatten_norm(const Mat& X, double p) {
  if (!(p > 0)) throw BadParamsError("schatten_norm: p must be positive");
  Eigen::JacobiSVD<Mat> svd(X);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    acc += std::pow(svd.singularValues()[i], p);
  return std::pow(acc, 1.0 / p);
}

double top_m_eigensum(const Mat& rho, int M) {
  if (M < 1 || M > rho.rows())
    throw BadRankError("top_m_eigensum: rank out of range");
  SpectralDecomposition s = eig_hermitian(rho);
  double acc = 0.0;
  for (int i = 0; i < M; ++i) acc += s.eigenvalues[i];
  return acc;
}

bool is_majorized(std::vector<double> x, std::vector<double> y, double tol) {
  size_t n = std::max(x.size(), y.size());
  x.resize(n, 0.0);
  y.resize(n, 0.0);
  std::sort(x.begin(), x.end(), std::greater<>());
  std::sort(y.begin(), y.end(), std::greater<>());
  double sx = 0.0, sy = 0.0;
  for (size_t k = 0; k < n; ++k) {
    sx += x[k];
    sy += y[k];
    if (sx > sy + tol) return false;
  }
  return std::abs(sx - sy) <= tol;
}

}  // namespace qdiv::mat
