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

#include "qdiv/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qdiv::div {

using mat::CVec;
using mat::eig_hermitian;
using mat::matrix_power;
using mat::RVec;
using mat::SpectralDecomposition;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Mass of rho tolerated outside the support of sigma before the support
// condition counts as violated.
constexpr double kLeakTol = 1e-9;

double hermitian_op_norm(const Mat& h) {
  SpectralDecomposition s = eig_hermitian(h);
  double m = 0.0;
  for (int i = 0; i < s.dim(); ++i) m = std::max(m, std::abs(s.eigenvalues[i]));
  return m;
}

Mat hermitize(const Mat& x) { return (x + x.adjoint()) / 2.0; }

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

}  // namespace

RenyiOrder::RenyiOrder(double a) : alpha(a) {
  if (!(a > 0.0) || a == 1.0)
    throw BadParamsError("Renyi order must be positive and different from 1");
}

double RenyiOrder::conjugate(double alpha) {
  return alpha / (2.0 * alpha - 1.0);
}

double RenyiOrder::beta() const {
  if (alpha <= 0.5) throw BadParamsError("conjugate undefined for alpha <= 1/2");
  return conjugate(alpha);
}

bool support_contained(const Mat& rho, const Mat& sigma) {
  Mat proj = mat::support_projector(sigma);
  double tr_rho = rho.trace().real();
  double leak = tr_rho - (proj * rho * proj).trace().real();
  return leak <= kLeakTol * std::max(1.0, tr_rho);
}

bool supports_overlap(const Mat& rho, const Mat& sigma) {
  Mat proj = mat::support_projector(sigma);
  double tr_rho = rho.trace().real();
  double mass = (proj * rho * proj).trace().real();
  return mass > 1e-12 * std::max(1.0, tr_rho);
}

double von_neumann_entropy(const Mat& rho) {
  SpectralDecomposition s = eig_hermitian(rho);
  double acc = 0.0;
  for (int i = 0; i < s.dim(); ++i) {
    double lam = s.eigenvalues[i];
    if (lam > 1e-300) acc -= lam * std::log2(lam);
  }
  return acc;
}

DivergenceValue qre(const Mat& rho, const Mat& sigma) {
  if (!support_contained(rho, sigma)) return DivergenceValue::infinite();
  Mat proj = mat::support_projector(sigma);
  Mat r = hermitize(proj * rho * proj);
  Mat log_r = mat::matrix_function(r, [](double x) { return std::log2(x); }, true);
  Mat log_s = mat::matrix_function(sigma, [](double x) { return std::log2(x); }, true);
  double d = (r * (log_r - log_s)).trace().real();
  return DivergenceValue::finite(d);
}

double qiv(const Mat& rho, const Mat& sigma) {
  if (!support_contained(rho, sigma)) return kInf;
  Mat proj = mat::support_projector(sigma);
  Mat r = hermitize(proj * rho * proj);
  Mat log_r = mat::matrix_function(r, [](double x) { return std::log2(x); }, true);
  Mat log_s = mat::matrix_function(sigma, [](double x) { return std::log2(x); }, true);
  Mat delta = log_r - log_s;
  double d = (r * delta).trace().real();
  double second = (r * delta * delta).trace().real();
  return std::max(second - d * d, 0.0);
}

DivergenceValue rre(const Mat& rho, const Mat& sigma, double alpha) {
  if (alpha < 0.0 || alpha == 1.0) throw BadParamsError("rre: bad alpha");
  double tr_rho = rho.trace().real();
  if (alpha == 0.0) {
    if (!supports_overlap(rho, sigma)) return DivergenceValue::infinite();
    Mat proj = mat::support_projector(rho);
    double t = (proj * sigma).trace().real();
    if (t <= 0) return DivergenceValue::infinite();
    return DivergenceValue::finite(-std::log2(t));
  }
  if (alpha > 1.0) {
    if (!support_contained(rho, sigma)) return DivergenceValue::infinite();
  } else if (!supports_overlap(rho, sigma)) {
    return DivergenceValue::infinite();
  }
  Mat ra = matrix_power(rho, alpha);
  Mat sb = matrix_power(sigma, 1.0 - alpha);
  double t = (ra * sb).trace().real();
  if (t <= 0) return DivergenceValue::infinite();
  return DivergenceValue::finite((std::log2(t) - std::log2(tr_rho)) /
                                 (alpha - 1.0));
}

double srd_q(const Mat& rho, const Mat& sigma, double alpha) {
  RenyiOrder order(alpha);
  Mat a = matrix_power(sigma, order.gamma());
  Mat m = hermitize(a * rho * a);
  SpectralDecomposition s = eig_hermitian(m);
  double lam_max = std::max(s.eigenvalues[0], 0.0);
  double acc = 0.0;
  for (int i = 0; i < s.dim(); ++i) {
    double lam = s.eigenvalues[i];
    if (lam > mat::kSupportTol * lam_max) acc += std::pow(lam, alpha);
  }
  return acc;
}

DivergenceValue srd(const Mat& rho, const Mat& sigma, double alpha) {
  RenyiOrder order(alpha);
  bool ok = support_contained(rho, sigma) ||
            (alpha < 1.0 && supports_overlap(rho, sigma));
  if (!ok) return DivergenceValue::infinite();
  // log-domain evaluation keeps extreme orders (the max-relative-entropy
  // limit) inside double range
  Mat a = matrix_power(sigma, order.gamma());
  Mat m = hermitize(a * rho * a);
  SpectralDecomposition s = eig_hermitian(m);
  // the support threshold matters at tiny orders, where even eigenvalue
  // noise would contribute a whole phantom dimension through lam^alpha
  double lam_max = std::max(s.eigenvalues[0], 0.0);
  std::vector<double> exponents;
  for (int i = 0; i < s.dim(); ++i) {
    double lam = s.eigenvalues[i];
    if (lam > mat::kSupportTol * lam_max)
      exponents.push_back(alpha * std::log2(lam));
  }
  if (exponents.empty()) return DivergenceValue::infinite();
  double top = *std::max_element(exponents.begin(), exponents.end());
  double acc = 0.0;
  for (double e : exponents) acc += std::exp2(e - top);
  double log_q = top + std::log2(acc);
  double tr_rho = rho.trace().real();
  return DivergenceValue::finite((log_q - std::log2(tr_rho)) / (alpha - 1.0));
}

namespace {

// Sandwiched divergence for very small alpha. The exponent gamma blows up
// and the sandwiched operator's eigenvalues spread over thousands of orders
// of magnitude, so the direct spectral route overflows. Instead the
// log-eigenvalue profile is recovered from the graded structure: with
// R = rho written in sigma's eigenbasis and restricted to supp sigma, the
// product of the k largest eigenvalues of sigma^g rho sigma^g grows like
// 2^(2g E_k) where E_k maximizes the sum of log2-eigenvalues of sigma over
// k-subsets whose principal minor of R does not vanish. The O(1) prefactors
// enter the divergence at order alpha and cancel in the extrapolation step
// of srd_zero_limit.
double srd_small_alpha(const Mat& rho, const Mat& sigma, double alpha) {
  SpectralDecomposition s = eig_hermitian(sigma);
  double s_max = std::max(s.eigenvalues[0], 0.0);
  std::vector<int> supp;
  for (int i = 0; i < s.dim(); ++i)
    if (s.eigenvalues[i] > mat::kSupportTol * s_max) supp.push_back(i);
  const int ns = static_cast<int>(supp.size());
  if (ns == 0) return kInf;

  Mat f(sigma.rows(), ns);
  RVec logs(ns);
  for (int j = 0; j < ns; ++j) {
    f.col(j) = s.eigenvectors.col(supp[j]);
    logs[j] = std::log2(s.eigenvalues[supp[j]]);
  }
  Mat r = hermitize(f.adjoint() * rho * f);

  // E_k via subset enumeration; dims are tiny by the module's scope.
  std::vector<double> best(ns + 1, -kInf);
  best[0] = 0.0;
  for (unsigned mask = 1; mask < (1u << ns); ++mask) {
    int k = __builtin_popcount(mask);
    std::vector<int> idx;
    double sum_logs = 0.0;
    double scale = 1.0;
    for (int j = 0; j < ns; ++j)
      if (mask & (1u << j)) {
        idx.push_back(j);
        sum_logs += logs[j];
        scale *= std::max(r(j, j).real(), 1e-30);
      }
    Mat sub(k, k);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) sub(a, b) = r(idx[a], idx[b]);
    double det = sub.determinant().real();
    if (det > 1e-10 * scale) best[k] = std::max(best[k], sum_logs);
  }

  double tr_rho = rho.trace().real();
  // log-sum-exp over the graded eigenvalue profile
  std::vector<double> exponents;
  for (int k = 1; k <= ns; ++k) {
    if (best[k] == -kInf || best[k - 1] == -kInf) break;
    exponents.push_back((1.0 - alpha) * (best[k] - best[k - 1]));
  }
  if (exponents.empty()) return kInf;
  double m = *std::max_element(exponents.begin(), exponents.end());
  double acc = 0.0;
  for (double e : exponents) acc += std::exp2(e - m);
  double log_q = m + std::log2(acc);
  return (log_q - std::log2(tr_rho)) / (alpha - 1.0);
}

}  // namespace

double srd_zero_limit(const Mat& rho, const Mat& sigma) {
  if (!supports_overlap(rho, sigma)) return kInf;
  const double a1 = 1e-4, a2 = 2e-4;
  double f1 = srd_small_alpha(rho, sigma, a1);
  double f2 = srd_small_alpha(rho, sigma, a2);
  return 2.0 * f1 - f2;
}

DivergenceValue alpha_z(const Mat& rho, const Mat& sigma, double alpha,
                        double z) {
  if (!(z > 0)) throw BadParamsError("alpha_z: z must be positive");
  if (!(alpha >= 0) || alpha == 1.0) throw BadParamsError("alpha_z: bad alpha");
  bool ok = support_contained(rho, sigma) ||
            (alpha < 1.0 && supports_overlap(rho, sigma));
  if (!ok) return DivergenceValue::infinite();
  Mat ra = matrix_power(rho, alpha / (2.0 * z));
  Mat sb = matrix_power(sigma, (1.0 - alpha) / z);
  Mat m = hermitize(ra * sb * ra);
  SpectralDecomposition s = eig_hermitian(m);
  double lam_max = std::max(s.eigenvalues[0], 0.0);
  double acc = 0.0;
  for (int i = 0; i < s.dim(); ++i) {
    double lam = s.eigenvalues[i];
    if (lam > mat::kSupportTol * lam_max) acc += std::pow(lam, z);
  }
  if (acc <= 0) return DivergenceValue::infinite();
  double tr_rho = rho.trace().real();
  return DivergenceValue::finite((std::log2(acc) - std::log2(tr_rho)) /
                                 (alpha - 1.0));
}

double dmin(const Mat& rho, const Mat& sigma) {
  double f = fidelity(rho, sigma);
  double tr_rho = rho.trace().real();
  if (f <= 0) return kInf;
  return -2.0 * std::log2(f) + 2.0 * std::log2(tr_rho);
}

DivergenceValue dmax(const Mat& rho, const Mat& sigma) {
  if (!support_contained(rho, sigma)) return DivergenceValue::infinite();
  Mat inv_half = matrix_power(sigma, -0.5);
  Mat m = hermitize(inv_half * rho * inv_half);
  SpectralDecomposition s = eig_hermitian(m);
  double lam = std::max(s.eigenvalues[0], 0.0);
  if (lam <= 0) return DivergenceValue::infinite();
  return DivergenceValue::finite(std::log2(lam));
}

double fidelity(const Mat& rho, const Mat& sigma) {
  if (rho.rows() != sigma.rows())
    throw DimMismatchError("fidelity: dimension mismatch");
  Mat half = matrix_power(rho, 0.5);
  Mat m = hermitize(half * sigma * half);
  SpectralDecomposition s = eig_hermitian(m);
  // sub-support eigenvalue noise would be amplified by the square root
  double lam_max = std::max(s.eigenvalues[0], 0.0);
  double acc = 0.0;
  for (int i = 0; i < s.dim(); ++i) {
    double lam = s.eigenvalues[i];
    if (lam > mat::kSupportTol * lam_max) acc += std::sqrt(lam);
  }
  return acc;
}

double trace_distance(const Mat& rho, const Mat& sigma) {
  if (rho.rows() != sigma.rows())
    throw DimMismatchError("trace_distance: dimension mismatch");
  SpectralDecomposition s = eig_hermitian(rho - sigma);
  double acc = 0.0;
  for (int i = 0; i < s.dim(); ++i) acc += std::abs(s.eigenvalues[i]);
  return acc / 2.0;
}

double hypothesis_testing_re(const Mat& rho, const Mat& sigma, double eps) {
  if (eps < 0.0 || eps > 1.0) throw BadParamsError("hypothesis_testing_re: eps");
  double tr_rho = rho.trace().real();

  Mat proj = mat::support_projector(sigma);
  double leak = tr_rho - (proj * rho * proj).trace().real();
  leak = std::max(leak, 0.0);
  double target = (1.0 - eps) * tr_rho - leak;
  if (target <= 1e-15) return kInf;  // the free part of the test suffices

  // compress onto supp sigma
  SpectralDecomposition ss = eig_hermitian(sigma);
  double s_max = std::max(ss.eigenvalues[0], 0.0);
  std::vector<int> supp;
  for (int i = 0; i < ss.dim(); ++i)
    if (ss.eigenvalues[i] > mat::kSupportTol * s_max) supp.push_back(i);
  const int ns = static_cast<int>(supp.size());
  Mat f(sigma.rows(), ns);
  for (int j = 0; j < ns; ++j) f.col(j) = ss.eigenvectors.col(supp[j]);
  Mat r = hermitize(f.adjoint() * rho * f);
  Mat s = hermitize(f.adjoint() * sigma * f);

  if (eps == 0.0 && leak <= 1e-15) {
    // zero-error case: the optimal test is the support projector of rho
    Mat pr = mat::support_projector(r);
    double beta = (pr * s).trace().real();
    return beta > 0 ? -std::log2(beta) : kInf;
  }

  auto mass_above = [&](double mu) {
    Mat p = mat::spectral_projector(r - mu * s, mat::Relation::Greater);
    return (p * r).trace().real();
  };

  double lo = 0.0, hi = 1.0;
  while (mass_above(hi) > target && hi < 1e18) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    double mid = (lo + hi) / 2.0;
    if (mass_above(mid) > target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-15 * std::max(1.0, hi)) break;
  }
  double mu = hi;

  Mat pencil = r - mu * s;
  SpectralDecomposition ps = eig_hermitian(pencil);
  double scale = std::max(hermitian_op_norm(pencil), 1e-300);
  double band = std::max(1e-9 * scale, 1e-13 * std::max(1.0, mu));
  Mat p_plus = Mat::Zero(ns, ns);
  Mat p_zero = Mat::Zero(ns, ns);
  for (int i = 0; i < ps.dim(); ++i) {
    Mat piece = ps.eigenvectors.col(i) * ps.eigenvectors.col(i).adjoint();
    if (ps.eigenvalues[i] > band)
      p_plus += piece;
    else if (ps.eigenvalues[i] >= -band)
      p_zero += piece;
  }
  double a = (p_plus * r).trace().real();
  double k0 = (p_zero * r).trace().real();
  double t = 0.0;
  if (target > a && k0 > 1e-15) t = clamp01((target - a) / k0);
  double beta = (p_plus * s).trace().real() + t * (p_zero * s).trace().real();
  if (beta <= 0) return kInf;
  return -std::log2(beta);
}

double info_spectrum_ds(const Mat& rho, const Mat& sigma, double eps,
                        const InfoSpectrumOptions& opt) {
  if (eps < 0.0 || eps > 1.0) throw BadParamsError("info_spectrum_ds: eps");
  auto cond = [&](double gamma) {
    Mat p = mat::spectral_projector(rho - std::exp2(gamma) * sigma,
                                    mat::Relation::LessEqual);
    return (p * rho).trace().real() <= eps;
  };
  if (cond(opt.hi))
    throw GridExhaustedError("info_spectrum_ds: condition holds at grid top");

  // Descend from the top at the coarse step; refine twice around the bracket.
  double lo = opt.lo, hi = opt.hi, step = opt.coarse_step;
  const double steps[] = {opt.coarse_step, 2e-3, opt.final_step};
  double found = -kInf;
  for (int pass = 0; pass < 3; ++pass) {
    step = steps[pass];
    found = -kInf;
    for (double g = hi - step; g >= lo - step / 2; g -= step) {
      if (cond(g)) {
        found = g;
        break;
      }
    }
    if (found == -kInf) {
      if (pass == 0) return -kInf;  // no grid point satisfies the condition
      break;
    }
    lo = found;
    hi = found + step;
  }
  return found;
}

namespace {

double positive_part_at(const Mat& rho, const Mat& sigma, double gamma) {
  return mat::positive_part_trace(rho, std::exp2(gamma) * sigma);
}

// Solve tr(rho - 2^gamma sigma)_+ = level by bisection (the map is
// continuous and monotonically decreasing in gamma).
double solve_positive_part(const Mat& rho, const Mat& sigma, double level) {
  double lo = -64.0, hi = 64.0;
  while (positive_part_at(rho, sigma, lo) < level && lo > -4096) lo -= 64.0;
  while (positive_part_at(rho, sigma, hi) > level && hi < 4096) hi += 64.0;
  for (int it = 0; it < 200; ++it) {
    double mid = (lo + hi) / 2.0;
    if (positive_part_at(rho, sigma, mid) >= level)
      lo = mid;
    else
      hi = mid;
  }
  return (lo + hi) / 2.0;
}

}  // namespace

double underline_ds(const Mat& rho, const Mat& sigma, double eps) {
  if (eps <= 0.0 || eps >= 1.0) throw BadParamsError("underline_ds: eps");
  double tr_rho = rho.trace().real();
  return solve_positive_part(rho, sigma, (1.0 - eps) * tr_rho);
}

double overline_ds(const Mat& rho, const Mat& sigma, double eps) {
  if (eps <= 0.0 || eps >= 1.0) throw BadParamsError("overline_ds: eps");
  double tr_rho = rho.trace().real();
  return solve_positive_part(rho, sigma, eps * tr_rho);
}

Mat frank_lieb_optimizer(const Mat& rho, const Mat& sigma, double alpha) {
  if (!(alpha >= 0.5) || alpha == 1.0)
    throw BadParamsError("frank_lieb_optimizer: alpha outside [1/2,1)u(1,inf)");
  bool ok = support_contained(rho, sigma) ||
            (alpha < 1.0 && supports_overlap(rho, sigma));
  if (!ok) throw SupportViolationError("frank_lieb_optimizer: support case");
  double g = (1.0 - alpha) / (2.0 * alpha);
  Mat sg = matrix_power(sigma, g);
  Mat inner = matrix_power(hermitize(sg * rho * sg), alpha - 1.0);
  return hermitize(sg * inner * sg);
}

double frank_lieb_objective(const Mat& h, const Mat& rho, const Mat& sigma,
                            double alpha) {
  double g = (1.0 - alpha) / (2.0 * alpha);
  Mat s_neg = matrix_power(sigma, -g);
  Mat m = hermitize(s_neg * h * s_neg);
  Mat powered = matrix_power(m, alpha / (alpha - 1.0));
  return alpha * (rho * h).trace().real() -
         (alpha - 1.0) * powered.trace().real();
}

std::pair<double, double> dpi_gap_and_residual(
    const Mat& rho, const Mat& sigma, const quantum::QuantumChannel& channel,
    double alpha) {
  Mat h_in = frank_lieb_optimizer(rho, sigma, alpha);
  Mat rho_out = channel.apply(rho);
  Mat sigma_out = channel.apply(sigma);
  Mat h_out = frank_lieb_optimizer(rho_out, sigma_out, alpha);
  Mat lifted = channel.adjoint_apply(h_out);
  double residual = hermitian_op_norm(h_in - lifted);
  double gap = srd(rho, sigma, alpha).or_inf() -
               srd(rho_out, sigma_out, alpha).or_inf();
  return {gap, residual};
}

}  // namespace qdiv::div
