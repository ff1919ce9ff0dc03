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

#include "qdiv/quantum.hpp"

#include <algorithm>
#include <cmath>

namespace qdiv::quantum {

using mat::eig_hermitian;
using mat::SpectralDecomposition;

PositiveOperator::PositiveOperator(Mat m) : m_(std::move(m)) {
  mat::check_hermitian(m_);
  SpectralDecomposition s = eig_hermitian(m_);
  double lam_max = s.dim() > 0 ? std::max(s.eigenvalues[0], 0.0) : 0.0;
  double lam_min = s.dim() > 0 ? s.eigenvalues[s.dim() - 1] : 0.0;
  if (lam_min < -kPsdTol * std::max(1.0, lam_max))
    throw BadParamsError("operator is not positive semidefinite, min eig " +
                         std::to_string(lam_min));
}

DensityMatrix::DensityMatrix(Mat m) : m_(std::move(m)) {
  PositiveOperator check(m_);
  double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol)
    throw BadParamsError("density matrix trace " + std::to_string(tr));
}

DensityMatrix DensityMatrix::from_pure(const CVec& psi) {
  PureStateVector v(psi);
  return DensityMatrix(v.projector());
}

PureStateVector::PureStateVector(CVec amplitudes) : amp_(std::move(amplitudes)) {
  double n = amp_.norm();
  if (std::abs(n - 1.0) > kNormTol)
    throw BadParamsError("pure state norm " + std::to_string(n));
}

Povm::Povm(std::vector<Mat> els) : elements(std::move(els)) {
  if (elements.empty()) throw BadParamsError("POVM needs at least one element");
  int d = static_cast<int>(elements.front().rows());
  Mat sum = Mat::Zero(d, d);
  for (const Mat& e : elements) {
    PositiveOperator check(e);
    if (e.rows() != d) throw DimMismatchError("POVM elements of mixed dims");
    sum += e;
  }
  if (mat::max_abs(sum - Mat::Identity(d, d)) > kTpTol)
    throw BadParamsError("POVM does not resolve the identity");
}

QuantumChannel::QuantumChannel(std::vector<Mat> kraus, double tp_tol) {
  if (kraus.empty()) throw BadParamsError("channel needs at least one Kraus operator");
  in_ = static_cast<int>(kraus.front().cols());
  out_ = static_cast<int>(kraus.front().rows());
  Mat sum = Mat::Zero(in_, in_);
  for (const Mat& k : kraus) {
    if (k.cols() != in_ || k.rows() != out_)
      throw DimMismatchError("Kraus operators of mixed dims");
    sum += k.adjoint() * k;
  }
  if (mat::max_abs(sum - Mat::Identity(in_, in_)) > tp_tol)
    throw BadParamsError("channel is not trace preserving");
  kraus_ = std::move(kraus);
}

QuantumChannel QuantumChannel::trace_preserving_on(std::vector<Mat> kraus,
                                                   const Mat& proj) {
  if (kraus.empty()) throw BadParamsError("channel needs at least one Kraus operator");
  QuantumChannel ch;
  ch.in_ = static_cast<int>(kraus.front().cols());
  ch.out_ = static_cast<int>(kraus.front().rows());
  Mat sum = Mat::Zero(ch.in_, ch.in_);
  for (const Mat& k : kraus) sum += k.adjoint() * k;
  if (mat::max_abs(sum - proj) > 1e-8)
    throw BadParamsError("channel is not trace preserving on the subspace");
  ch.kraus_ = std::move(kraus);
  return ch;
}

Mat QuantumChannel::apply(const Mat& x) const {
  if (kraus_.empty()) throw BadParamsError("channel is empty");
  if (x.rows() != in_ || x.cols() != in_)
    throw DimMismatchError("channel input dimension mismatch");
  Mat y = Mat::Zero(out_, out_);
  for (const Mat& k : kraus_) y += k * x * k.adjoint();
  return y;
}

Mat QuantumChannel::adjoint_apply(const Mat& y) const {
  if (y.rows() != out_ || y.cols() != out_)
    throw DimMismatchError("adjoint channel input dimension mismatch");
  Mat x = Mat::Zero(in_, in_);
  for (const Mat& k : kraus_) x += k.adjoint() * y * k;
  return x;
}

Mat QuantumChannel::stinespring() const {
  const int n = env_dim();
  Mat v = Mat::Zero(static_cast<long>(n) * out_, in_);
  for (int e = 0; e < n; ++e) v.middleRows(static_cast<long>(e) * out_, out_) = kraus_[e];
  return v;
}

QuantumChannel QuantumChannel::compose_after(const QuantumChannel& inner) const {
  if (inner.out_dim() != in_)
    throw DimMismatchError("channel composition dimension mismatch");
  std::vector<Mat> ks;
  ks.reserve(kraus_.size() * inner.kraus_.size());
  for (const Mat& a : kraus_)
    for (const Mat& b : inner.kraus_) ks.push_back(a * b);
  return QuantumChannel(std::move(ks));
}

PureStateVector purify(const DensityMatrix& rho) {
  SpectralDecomposition s = eig_hermitian(rho.matrix());
  double lam_max = std::max(s.eigenvalues[0], 0.0);
  std::vector<int> keep;
  for (int i = 0; i < s.dim(); ++i)
    if (s.eigenvalues[i] > mat::kSupportTol * lam_max) keep.push_back(i);
  const int r = static_cast<int>(keep.size());
  const int d = rho.dim();
  CVec psi = CVec::Zero(static_cast<long>(d) * r);
  for (int k = 0; k < r; ++k) {
    double w = std::sqrt(s.eigenvalues[keep[k]]);
    for (int a = 0; a < d; ++a)
      psi[static_cast<long>(a) * r + k] = w * s.eigenvectors(a, keep[k]);
  }
  psi /= psi.norm();
  return PureStateVector(psi);
}

CVec SchmidtDecomposition::reconstruct(int dim_a, int dim_b) const {
  CVec psi = CVec::Zero(static_cast<long>(dim_a) * dim_b);
  for (int k = 0; k < rank; ++k)
    for (int a = 0; a < dim_a; ++a)
      for (int b = 0; b < dim_b; ++b)
        psi[static_cast<long>(a) * dim_b + b] +=
            coefficients[k] * basis_a(a, k) * basis_b(b, k);
  return psi;
}

SchmidtDecomposition schmidt(const CVec& psi, int dim_a, int dim_b) {
  if (psi.size() != static_cast<long>(dim_a) * dim_b)
    throw DimMismatchError("schmidt: dims do not factor the vector");
  Mat c(dim_a, dim_b);
  for (int a = 0; a < dim_a; ++a)
    for (int b = 0; b < dim_b; ++b) c(a, b) = psi[static_cast<long>(a) * dim_b + b];
  Eigen::JacobiSVD<Mat> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition out;
  out.coefficients = svd.singularValues();
  out.basis_a = svd.matrixU();
  out.basis_b = svd.matrixV().conjugate();
  double smax = out.coefficients.size() ? out.coefficients[0] : 0.0;
  out.rank = 0;
  for (Eigen::Index i = 0; i < out.coefficients.size(); ++i)
    if (out.coefficients[i] > mat::kSupportTol * smax) ++out.rank;
  return out;
}

CVec maximally_entangled_vector(int dim) {
  CVec psi = CVec::Zero(static_cast<long>(dim) * dim);
  double w = 1.0 / std::sqrt(static_cast<double>(dim));
  for (int i = 0; i < dim; ++i) psi[static_cast<long>(i) * dim + i] = w;
  return psi;
}

Mat maximally_entangled(int dim) {
  CVec psi = maximally_entangled_vector(dim);
  return psi * psi.adjoint();
}

Mat completely_mixed(int dim) {
  return Mat::Identity(dim, dim) / static_cast<double>(dim);
}

Mat ginibre(int rows, int cols, Rng& rng) {
  Mat g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = cplx(rng.gauss(), rng.gauss());
  return g;
}

Mat random_unitary(int dim, Rng& rng) {
  Mat g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  // fix the phase of R's diagonal so the distribution is Haar
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    cplx d = r(j, j);
    double a = std::abs(d);
    q.col(j) *= (a > 0) ? d / a : cplx(1, 0);
  }
  return q;
}

DensityMatrix random_density(int dim, int rank, std::uint64_t seed) {
  if (rank < 1 || rank > dim) throw BadParamsError("random_density: bad rank");
  Rng rng(seed);
  Mat g = ginibre(dim, rank, rng);
  Mat rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (rho + rho.adjoint()) / 2.0;
  return DensityMatrix(rho);
}

PureStateVector random_pure(int dim, std::uint64_t seed) {
  Rng rng(seed);
  Mat g = ginibre(dim, 1, rng);
  CVec v = g.col(0);
  v /= v.norm();
  return PureStateVector(v);
}

QuantumChannel random_channel(int in_dim, int out_dim, int env_dim,
                              std::uint64_t seed) {
  if (env_dim < 1 || static_cast<long>(out_dim) * env_dim < in_dim)
    throw BadParamsError("random_channel: isometry does not fit");
  Rng rng(seed);
  Mat g = ginibre(out_dim * env_dim, in_dim, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = Mat(qr.householderQ()).leftCols(in_dim);
  std::vector<Mat> kraus(env_dim);
  for (int e = 0; e < env_dim; ++e)
    kraus[e] = q.middleRows(static_cast<long>(e) * out_dim, out_dim);
  return QuantumChannel(std::move(kraus));
}

QuantumChannel identity_channel(int dim) {
  return QuantumChannel({Mat::Identity(dim, dim)});
}

QuantumChannel unitary_channel(const Mat& u) {
  if (mat::max_abs(u.adjoint() * u - Mat::Identity(u.cols(), u.cols())) > 1e-10)
    throw BadParamsError("unitary_channel: operator is not unitary");
  return QuantumChannel({u});
}

QuantumChannel depolarizing_channel(int dim, double p) {
  if (p < 0 || p > 1) throw BadParamsError("depolarizing_channel: bad p");
  std::vector<Mat> kraus;
  if (p < 1.0)
    kraus.push_back(std::sqrt(1.0 - p) * Mat::Identity(dim, dim));
  double w = std::sqrt(p / dim);
  if (p > 0.0) {
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        Mat k = Mat::Zero(dim, dim);
        k(i, j) = w;
        kraus.push_back(k);
      }
  }
  return QuantumChannel(std::move(kraus));
}

QuantumChannel dephasing_channel(int dim, double p) {
  if (p < 0 || p > 1) throw BadParamsError("dephasing_channel: bad p");
  std::vector<Mat> kraus;
  if (p < 1.0) kraus.push_back(std::sqrt(1.0 - p) * Mat::Identity(dim, dim));
  if (p > 0.0) {
    for (int i = 0; i < dim; ++i) {
      Mat k = Mat::Zero(dim, dim);
      k(i, i) = std::sqrt(p);
      kraus.push_back(k);
    }
  }
  return QuantumChannel(std::move(kraus));
}

QuantumChannel pinching_channel(const Mat& sigma) {
  SpectralDecomposition s = eig_hermitian(sigma);
  std::vector<Mat> kraus;
  kraus.reserve(s.distinct_count());
  for (int k = 0; k < s.distinct_count(); ++k)
    kraus.push_back(s.cluster_projector(k));
  return QuantumChannel(std::move(kraus));
}

QuantumChannel measurement_channel(const Povm& povm) {
  const int d = povm.dim();
  const int n = povm.outcomes();
  std::vector<Mat> kraus;
  for (int i = 0; i < n; ++i) {
    SpectralDecomposition s = eig_hermitian(povm.elements[i]);
    double lam_max = std::max(s.eigenvalues[0], 0.0);
    for (int k = 0; k < d; ++k) {
      double lam = std::max(s.eigenvalues[k], 0.0);
      if (lam <= mat::kSupportTol * lam_max) continue;
      Mat op = Mat::Zero(n, d);
      op.row(i) = std::sqrt(lam) * s.eigenvectors.col(k).adjoint();
      kraus.push_back(op);
    }
  }
  return QuantumChannel(std::move(kraus));
}

std::pair<Mat, std::vector<int>> apply_channel_at(const Mat& rho,
                                                  const std::vector<int>& dims,
                                                  int position,
                                                  const QuantumChannel& channel) {
  const int n = static_cast<int>(dims.size());
  if (position < 0 || position >= n)
    throw DimMismatchError("apply_channel_at: bad position");
  if (dims[position] != channel.in_dim())
    throw DimMismatchError("apply_channel_at: channel does not fit the factor");

  // move the target factor to the front
  std::vector<int> perm{position};
  for (int k = 0; k < n; ++k)
    if (k != position) perm.push_back(k);
  Mat x = mat::permute_systems(rho, dims, perm);

  long rest = 1;
  for (int k = 0; k < n; ++k)
    if (k != position) rest *= dims[k];

  Mat y = Mat::Zero(static_cast<long>(channel.out_dim()) * rest,
                    static_cast<long>(channel.out_dim()) * rest);
  Mat ir = Mat::Identity(rest, rest);
  for (const Mat& k : channel.kraus()) {
    Mat lifted = mat::tensor(k, ir);
    y += lifted * x * lifted.adjoint();
  }

  // move the factor back to its original slot
  std::vector<int> new_dims_front{channel.out_dim()};
  for (int k = 0; k < n; ++k)
    if (k != position) new_dims_front.push_back(dims[k]);
  std::vector<int> inv(n);
  for (int k = 0; k < n; ++k) inv[perm[k]] = k;
  Mat out = mat::permute_systems(y, new_dims_front, inv);

  std::vector<int> out_dims = dims;
  out_dims[position] = channel.out_dim();
  return {out, out_dims};
}

QuantumChannel petz_recovery(const Mat& sigma, const QuantumChannel& channel) {
  PositiveOperator check(sigma);
  Mat lam_sigma = channel.apply(sigma);
  if (mat::support_rank(lam_sigma) == 0 || mat::max_abs(lam_sigma) < 1e-300)
    throw SingularSigmaError("petz_recovery: channel output has trivial support");
  Mat sigma_half = mat::matrix_power(sigma, 0.5);
  Mat out_inv_half = mat::matrix_power(lam_sigma, -0.5);
  std::vector<Mat> kraus;
  kraus.reserve(channel.kraus().size());
  for (const Mat& k : channel.kraus())
    kraus.push_back(sigma_half * k.adjoint() * out_inv_half);
  Mat proj = mat::support_projector(lam_sigma);
  return QuantumChannel::trace_preserving_on(std::move(kraus), proj);
}

double entanglement_fidelity(const DensityMatrix& rho,
                             const QuantumChannel& channel) {
  if (channel.in_dim() != rho.dim() || channel.out_dim() != rho.dim())
    throw DimMismatchError("entanglement_fidelity: channel must be endomorphic");
  double acc = 0.0;
  for (const Mat& k : channel.kraus()) {
    cplx t = (k * rho.matrix()).trace();
    acc += std::norm(t);
  }
  return std::sqrt(std::min(std::max(acc, 0.0), 1.0 + 1e-12));
}

}  // namespace qdiv::quantum
