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

#include "qdiv/renyi.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace qdiv::renyi {

using mat::CVec;
using mat::eig_hermitian;
using mat::matrix_power;
using mat::RVec;
using mat::SpectralDecomposition;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Mat hermitize(const Mat& x) { return (x + x.adjoint()) / 2.0; }

// Clip to the PSD cone and renormalize the trace; keeps perturbed iterates
// inside the state set.
Mat sanitize_state(const Mat& x) {
  SpectralDecomposition s = eig_hermitian(hermitize(x));
  Mat out = Mat::Zero(x.rows(), x.cols());
  double tr = 0.0;
  for (int i = 0; i < s.dim(); ++i) {
    double lam = std::max(s.eigenvalues[i], 0.0);
    tr += lam;
    if (lam > 0)
      out += lam * (s.eigenvectors.col(i) * s.eigenvectors.col(i).adjoint());
  }
  if (tr <= 0) return quantum::completely_mixed(static_cast<int>(x.rows()));
  return out / tr;
}

std::vector<Mat> hermitian_basis(int d) {
  std::vector<Mat> basis;
  basis.reserve(static_cast<size_t>(d) * d);
  for (int i = 0; i < d; ++i) {
    Mat e = Mat::Zero(d, d);
    e(i, i) = 1.0;
    basis.push_back(e);
  }
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Mat e = Mat::Zero(d, d);
      e(i, j) = s;
      e(j, i) = s;
      basis.push_back(e);
      Mat f = Mat::Zero(d, d);
      f(i, j) = mat::cplx(0, -s);
      f(j, i) = mat::cplx(0, s);
      basis.push_back(f);
    }
  return basis;
}

// Exponentiated-gradient minimization of a smooth objective over density
// matrices of dimension d. Gradients come from central finite differences
// along a Hermitian operator basis, projected onto the traceless tangent.
struct EgResult {
  double value = kInf;
  Mat state;
  int iterations = 0;
  bool converged = false;
  double final_step_norm = 0.0;
};

EgResult minimize_over_states(const std::function<double(const Mat&)>& objective,
                              const Mat& start, const OptimizerParams& p) {
  const int d = static_cast<int>(start.rows());
  auto basis = hermitian_basis(d);
  const double h = p.grad_step;

  Mat sigma = sanitize_state((1.0 - 1e-9) * start +
                             1e-9 * quantum::completely_mixed(d));
  double f = objective(sigma);
  double eta = p.step0;
  int streak = 0;
  EgResult res;
  res.state = sigma;
  res.value = f;

  for (int iter = 0; iter < p.max_iters; ++iter) {
    res.iterations = iter + 1;
    Mat grad = Mat::Zero(d, d);
    for (const Mat& e : basis) {
      double fp = objective(sanitize_state(sigma + h * e));
      double fm = objective(sanitize_state(sigma - h * e));
      grad += ((fp - fm) / (2.0 * h)) * e;
    }
    grad -= (grad.trace() / static_cast<double>(d)) * Mat::Identity(d, d);
    double gnorm = mat::max_abs(grad);
    res.final_step_norm = eta * gnorm;
    if (gnorm < 1e-14) {
      res.converged = true;
      break;
    }

    Mat log_sigma = mat::matrix_function(
        sigma, [](double x) { return std::log(std::max(x, 1e-280)); }, false);
    bool accepted = false;
    for (int back = 0; back < 40; ++back) {
      // the normalized exponential is shift invariant; pulling the top of
      // the spectrum to zero keeps the update inside double range
      SpectralDecomposition w = eig_hermitian(hermitize(log_sigma - eta * grad));
      RVec shifted(w.dim());
      for (int i = 0; i < w.dim(); ++i)
        shifted[i] = std::exp(w.eigenvalues[i] - w.eigenvalues[0]);
      Mat cand = w.eigenvectors * shifted.asDiagonal() *
                 w.eigenvectors.adjoint();
      cand = sanitize_state(cand);
      double fc = objective(cand);
      if (fc < f) {
        double rel_change = std::abs(f - fc) / std::max(1.0, std::abs(f));
        sigma = cand;
        f = fc;
        eta = std::min(eta * 1.25, 16.0);
        accepted = true;
        streak = (rel_change < p.tol) ? streak + 1 : 0;
        break;
      }
      eta *= 0.5;
      if (eta < 1e-13) break;
    }
    res.state = sigma;
    res.value = f;
    if (!accepted || streak >= p.tol_streak) {
      res.converged = accepted || streak >= p.tol_streak;
      if (!accepted) res.converged = true;  // stationary within line-search resolution
      break;
    }
  }
  return res;
}

// Sandwiched divergence of rho against (ref (x) sigma_B); ref is either the
// identity on A (conditional entropy) or rho_A (mutual information).
double sandwiched_against_product(const Mat& rho_ab, const Mat& ref_a,
                                  const Mat& sigma_b, double alpha) {
  Mat second = mat::tensor(ref_a, sigma_b);
  if (alpha == 1.0) return div::qre(rho_ab, second).or_inf();
  if (alpha > 1.0) {
    // the support condition bites only when sigma loses rank; the marginal
    // support inclusion covers the reference factor automatically
    SpectralDecomposition ss = eig_hermitian(sigma_b);
    double s_max = std::max(ss.eigenvalues[0], 0.0);
    if (ss.eigenvalues[ss.dim() - 1] <= mat::kSupportTol * s_max &&
        !div::support_contained(rho_ab, second))
      return kInf;
  }
  Mat g = matrix_power(second, (1.0 - alpha) / (2.0 * alpha));
  Mat t = hermitize(g * rho_ab * g);
  SpectralDecomposition s = eig_hermitian(t);
  double acc = 0.0;
  for (int i = 0; i < s.dim(); ++i) {
    double lam = std::max(s.eigenvalues[i], 0.0);
    if (lam > 0) acc += std::pow(lam, alpha);
  }
  if (acc <= 0) return kInf;
  return std::log2(acc) / (alpha - 1.0);
}

OptimizerReport optimize_against_product(const Mat& rho_ab, const Mat& ref_a,
                                         int dim_a, int dim_b, double alpha,
                                         const OptimizerParams& p) {
  if (rho_ab.rows() != static_cast<long>(dim_a) * dim_b)
    throw DimMismatchError("bipartite operator does not match dims");
  Mat rho_b = mat::partial_trace(rho_ab, {dim_a, dim_b}, {1});

  OptimizerReport report;
  if (alpha == 1.0) {
    // the minimizer is the B marginal; no search needed
    report.value = div::qre(rho_ab, mat::tensor(ref_a, rho_b)).or_inf();
    report.argmin_state = rho_b;
    report.converged = true;
    return report;
  }

  auto objective = [&](const Mat& sigma) {
    return sandwiched_against_product(rho_ab, ref_a, sigma, alpha);
  };

  std::vector<Mat> starts{rho_b};
  Rng rng(p.seed);
  for (int r = 0; r < p.restarts; ++r) {
    Mat g = quantum::ginibre(dim_b, dim_b, rng);
    Mat s = g * g.adjoint();
    starts.push_back(s / s.trace().real());
  }

  double best = kInf;
  for (size_t k = 0; k < starts.size(); ++k) {
    EgResult r = minimize_over_states(objective, starts[k], p);
    if (r.value < best) {
      best = r.value;
      report.value = r.value;
      report.argmin_state = r.state;
      report.iterations = r.iterations;
      report.converged = r.converged;
      report.final_step_norm = r.final_step_norm;
      report.restarts = static_cast<int>(k);
    }
  }
  return report;
}

}  // namespace

double renyi_entropy(const Mat& rho, double alpha) {
  if (alpha < 0) throw BadParamsError("renyi_entropy: alpha must be >= 0");
  if (alpha == 1.0) return div::von_neumann_entropy(rho);
  if (alpha == 0.0) return std::log2(static_cast<double>(mat::support_rank(rho)));
  SpectralDecomposition s = eig_hermitian(rho);
  double lam_max = std::max(s.eigenvalues[0], 0.0);
  double acc = 0.0;
  for (int i = 0; i < s.dim(); ++i) {
    double lam = s.eigenvalues[i];
    // the support threshold keeps eigenvalue noise out of fractional orders
    if (lam > mat::kSupportTol * lam_max) acc += std::pow(lam, alpha);
  }
  return std::log2(acc) / (1.0 - alpha);
}

OptimizerReport conditional_renyi(const Mat& rho_ab, int dim_a, int dim_b,
                                  double alpha, const OptimizerParams& params) {
  if (!(alpha >= 0.5)) throw BadParamsError("conditional_renyi: alpha < 1/2");
  OptimizerReport r = optimize_against_product(
      rho_ab, Mat::Identity(dim_a, dim_a), dim_a, dim_b, alpha, params);
  r.value = -r.value;
  return r;
}

OptimizerReport renyi_mutual_info(const Mat& rho_ab, int dim_a, int dim_b,
                                  double alpha, const OptimizerParams& params) {
  if (!(alpha >= 0.5)) throw BadParamsError("renyi_mutual_info: alpha < 1/2");
  Mat rho_a = mat::partial_trace(rho_ab, {dim_a, dim_b}, {0});
  return optimize_against_product(rho_ab, rho_a, dim_a, dim_b, alpha, params);
}

double renyi_cmi(const Mat& rho_abc, int dim_a, int dim_b, int dim_c,
                 double alpha, bool regularize) {
  if (!(alpha > 0) || alpha == 1.0) throw BadParamsError("renyi_cmi: bad alpha");
  std::vector<int> dims{dim_a, dim_b, dim_c};
  long total = static_cast<long>(dim_a) * dim_b * dim_c;
  if (rho_abc.rows() != total)
    throw DimMismatchError("renyi_cmi: dims do not match operator");

  Mat rho_ac = mat::partial_trace(rho_abc, dims, {0, 2});
  Mat rho_bc = mat::partial_trace(rho_abc, dims, {1, 2});
  Mat rho_c = mat::partial_trace(rho_abc, dims, {2});

  if (!regularize &&
      mat::support_rank(rho_bc) < dim_b * dim_c)
    throw SingularMarginalError("renyi_cmi: rho_BC is rank deficient");
  if (regularize) {
    auto mix = [](const Mat& x) -> Mat {
      int d = static_cast<int>(x.rows());
      return (1.0 - 1e-9) * x + 1e-9 * quantum::completely_mixed(d);
    };
    rho_ac = mix(rho_ac);
    rho_bc = mix(rho_bc);
    rho_c = mix(rho_c);
  }

  double g = (1.0 - alpha) / (2.0 * alpha);
  Mat half = matrix_power(rho_abc, 0.5);
  Mat x_ac = mat::embed(matrix_power(rho_ac, g), dims, {0, 2});
  Mat y_c = mat::embed(matrix_power(rho_c, -g), dims, {2});
  Mat z_bc = mat::embed(matrix_power(rho_bc, g), dims, {1, 2});
  Mat m = half * x_ac * y_c * z_bc;
  double norm = mat::schatten_norm(m, 2.0 * alpha);
  if (norm <= 0) return kInf;
  return (2.0 * alpha / (alpha - 1.0)) * std::log2(norm);
}

namespace {

double fidelity_prefactor(double alpha) {
  if (!(alpha > 0.5) || !(alpha < 1.0))
    throw BadParamsError("fidelity bound: alpha outside (1/2,1)");
  return 2.0 * alpha / (1.0 - alpha);
}

}  // namespace

double fidelity_bound_margin_entropy(const Mat& rho_a, const Mat& sigma_a,
                                     double alpha) {
  double c = fidelity_prefactor(alpha);
  double beta = div::RenyiOrder::conjugate(alpha);
  double f = div::fidelity(rho_a, sigma_a);
  return renyi_entropy(rho_a, alpha) - renyi_entropy(sigma_a, beta) -
         c * std::log2(std::max(f, 1e-300));
}

double fidelity_bound_margin_conditional(const Mat& rho_ab, const Mat& sigma_ab,
                                         int dim_a, int dim_b, double alpha,
                                         const OptimizerParams& params) {
  double c = fidelity_prefactor(alpha);
  double beta = div::RenyiOrder::conjugate(alpha);
  double f = div::fidelity(rho_ab, sigma_ab);
  double lhs = conditional_renyi(rho_ab, dim_a, dim_b, alpha, params).value -
               conditional_renyi(sigma_ab, dim_a, dim_b, beta, params).value;
  return lhs - c * std::log2(std::max(f, 1e-300));
}

double fidelity_bound_margin_mutual(const Mat& rho_ab, const Mat& sigma_ab,
                                    int dim_a, int dim_b, double alpha,
                                    const OptimizerParams& params) {
  std::vector<int> dims{dim_a, dim_b};
  Mat rho_a = mat::partial_trace(rho_ab, dims, {0});
  Mat sigma_a = mat::partial_trace(sigma_ab, dims, {0});
  if (mat::max_abs(rho_a - sigma_a) > 1e-8)
    throw PreconditionViolationError("fidelity bound (mutual): marginals differ");
  double c = fidelity_prefactor(alpha);
  double beta = div::RenyiOrder::conjugate(alpha);
  double f = div::fidelity(rho_ab, sigma_ab);
  double lhs = renyi_mutual_info(rho_ab, dim_a, dim_b, beta, params).value -
               renyi_mutual_info(sigma_ab, dim_a, dim_b, alpha, params).value;
  return lhs - c * std::log2(std::max(f, 1e-300));
}

double fidelity_bound_margin_cmi(const Mat& rho_abc, const Mat& sigma_abc,
                                 int dim_a, int dim_b, int dim_c, double alpha) {
  std::vector<int> dims{dim_a, dim_b, dim_c};
  auto check = [&](const std::vector<int>& keep, const char* what) {
    Mat a = mat::partial_trace(rho_abc, dims, keep);
    Mat b = mat::partial_trace(sigma_abc, dims, keep);
    if (mat::max_abs(a - b) > 1e-8)
      throw PreconditionViolationError(std::string("fidelity bound (cmi): ") +
                                       what + " marginals differ");
  };
  check({0, 2}, "AC");
  check({1, 2}, "BC");
  check({2}, "C");
  Mat rho_bc = mat::partial_trace(rho_abc, dims, {1, 2});
  if (mat::support_rank(rho_bc) < dim_b * dim_c)
    throw PreconditionViolationError("fidelity bound (cmi): rho_BC singular");

  double c = fidelity_prefactor(alpha);
  double beta = div::RenyiOrder::conjugate(alpha);
  double f = div::fidelity(rho_abc, sigma_abc);
  double lhs = renyi_cmi(rho_abc, dim_a, dim_b, dim_c, beta) -
               renyi_cmi(sigma_abc, dim_a, dim_b, dim_c, alpha);
  return lhs - c * std::log2(std::max(f, 1e-300));
}

OptimizerReport renyi_coherent_info(const quantum::QuantumChannel& channel,
                                    double alpha,
                                    const OptimizerParams& params) {
  if (!(alpha > 0)) throw BadParamsError("renyi_coherent_info: alpha <= 0");
  const int da = channel.in_dim();
  const int db = channel.out_dim();
  const int dr = da;
  const long n_amp = static_cast<long>(dr) * da;

  OptimizerParams inner = params;
  inner.restarts = 1;
  inner.max_iters = 250;

  auto evaluate = [&](const CVec& phi) {
    Mat input = phi * phi.adjoint();
    auto [omega, dims] =
        quantum::apply_channel_at(input, {dr, da}, 1, channel);
    OptimizerReport rep = optimize_against_product(
        omega, Mat::Identity(dr, dr), dr, db, alpha, inner);
    // min over sigma of the divergence equals minus the conditional entropy,
    // which is exactly the quantity to maximize
    return rep.value;
  };

  std::vector<CVec> seeds;
  seeds.push_back(quantum::maximally_entangled_vector(da));
  Rng rng(params.seed);
  for (int r = 0; r < std::max(params.restarts - 1, 1); ++r) {
    Mat g = quantum::ginibre(static_cast<int>(n_amp), 1, rng);
    CVec v = g.col(0);
    v /= v.norm();
    seeds.push_back(v);
  }

  OptimizerReport best;
  best.value = -kInf;
  for (size_t sdx = 0; sdx < seeds.size(); ++sdx) {
    CVec phi = seeds[sdx];
    double g0 = evaluate(phi);
    double eta = 0.25;
    const double h = 3e-5;
    int iters = 0;
    bool converged = false;
    int small_steps = 0;
    for (int iter = 0; iter < params.outer_iters; ++iter) {
      ++iters;
      CVec grad = CVec::Zero(n_amp);
      for (long k = 0; k < n_amp; ++k) {
        for (int part = 0; part < 2; ++part) {
          mat::cplx dir = part == 0 ? mat::cplx(1, 0) : mat::cplx(0, 1);
          CVec up = phi, dn = phi;
          up[k] += h * dir;
          dn[k] -= h * dir;
          up /= up.norm();
          dn /= dn.norm();
          double slope = (evaluate(up) - evaluate(dn)) / (2.0 * h);
          grad[k] += slope * dir;
        }
      }
      // tangent projection on the sphere
      mat::cplx overlap = phi.adjoint() * grad;
      grad -= overlap * phi;

      bool accepted = false;
      for (int back = 0; back < 25; ++back) {
        CVec cand = phi + eta * grad;
        cand /= cand.norm();
        double gc = evaluate(cand);
        if (gc > g0) {
          double rel = std::abs(gc - g0) / std::max(1.0, std::abs(g0));
          phi = cand;
          g0 = gc;
          eta = std::min(eta * 1.25, 4.0);
          accepted = true;
          small_steps = (rel < 1e-8) ? small_steps + 1 : 0;
          break;
        }
        eta *= 0.5;
        if (eta < 1e-10) break;
      }
      if (!accepted || small_steps >= 3) {
        converged = true;
        break;
      }
    }
    if (g0 > best.value) {
      best.value = g0;
      best.argmin_state = phi * phi.adjoint();
      best.iterations = iters;
      best.converged = converged;
      best.restarts = static_cast<int>(sdx);
    }
  }
  return best;
}

}  // namespace qdiv::renyi
