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

#include "qdiv/classical.hpp"

#include <algorithm>
#include <ostream>
#include <cmath>
#include <cstdio>
#include <limits>

#include "qdiv/divergence.hpp"

namespace qdiv::classical {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = 0.69314718055994530941723212145818;

double log2_factorial(double n) { return std::lgamma(n + 1.0) / kLn2; }

}  // namespace

ClassicalDistribution::ClassicalDistribution(std::vector<double> w,
                                             bool require_normalized)
    : weights(std::move(w)), normalized(require_normalized) {
  double sum = 0.0;
  for (double x : weights) {
    if (!(x >= 0.0) || !std::isfinite(x))
      throw BadParamsError("distribution weights must be finite and >= 0");
    sum += x;
  }
  if (normalized && std::abs(sum - 1.0) > 1e-12)
    throw BadParamsError("distribution is not normalized, sum " +
                         std::to_string(sum));
}

double ClassicalDistribution::total() const {
  double sum = 0.0;
  for (double x : weights) sum += x;
  return sum;
}

std::pair<ClassicalDistribution, ClassicalDistribution> nussbaum_szkola(
    const Mat& rho, const Mat& sigma) {
  if (rho.rows() != sigma.rows())
    throw DimMismatchError("nussbaum_szkola: dimension mismatch");
  auto er = mat::eig_hermitian(rho);
  auto es = mat::eig_hermitian(sigma);
  const int d = er.dim();
  // eigenvalues below the support threshold are exact zeros here so the
  // support-transfer property survives eigenvalue noise
  double r_max = std::max(er.eigenvalues[0], 0.0);
  double s_max = std::max(es.eigenvalues[0], 0.0);
  auto clip = [](double lam, double top) {
    return lam > mat::kSupportTol * top ? lam : 0.0;
  };
  std::vector<double> p(static_cast<size_t>(d) * d);
  std::vector<double> q(static_cast<size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double ov = std::norm(
          er.eigenvectors.col(i).dot(es.eigenvectors.col(j)));
      p[static_cast<size_t>(i) * d + j] = clip(er.eigenvalues[i], r_max) * ov;
      q[static_cast<size_t>(i) * d + j] = clip(es.eigenvalues[j], s_max) * ov;
    }
  bool rho_normalized = std::abs(rho.trace().real() - 1.0) <= 1e-10;
  bool sigma_normalized = std::abs(sigma.trace().real() - 1.0) <= 1e-10;
  return {ClassicalDistribution(std::move(p), rho_normalized),
          ClassicalDistribution(std::move(q), sigma_normalized)};
}

double kl(const ClassicalDistribution& p, const ClassicalDistribution& q) {
  if (p.size() != q.size()) throw DimMismatchError("kl: size mismatch");
  double acc = 0.0;
  for (size_t x = 0; x < p.size(); ++x) {
    if (p.weights[x] <= 0) continue;
    if (q.weights[x] <= 0) return kInf;
    acc += p.weights[x] * std::log2(p.weights[x] / q.weights[x]);
  }
  return acc;
}

double info_variance(const ClassicalDistribution& p,
                     const ClassicalDistribution& q) {
  double d = kl(p, q);
  if (!std::isfinite(d)) return kInf;
  double acc = 0.0;
  for (size_t x = 0; x < p.size(); ++x) {
    if (p.weights[x] <= 0) continue;
    double z = std::log2(p.weights[x] / q.weights[x]);
    acc += p.weights[x] * z * z;
  }
  return std::max(acc - d * d, 0.0);
}

double third_moment(const ClassicalDistribution& p,
                    const ClassicalDistribution& q) {
  double d = kl(p, q);
  if (!std::isfinite(d)) return kInf;
  double acc = 0.0;
  for (size_t x = 0; x < p.size(); ++x) {
    if (p.weights[x] <= 0) continue;
    double z = std::log2(p.weights[x] / q.weights[x]);
    acc += p.weights[x] * std::pow(std::abs(z - d), 3.0);
  }
  return acc;
}

SecondOrderStats pair_stats(const ClassicalDistribution& p,
                            const ClassicalDistribution& q) {
  SecondOrderStats st;
  st.d_bits = kl(p, q);
  st.v_bits2 = info_variance(p, q);
  st.t3 = third_moment(p, q);
  return st;
}

double gaussian_cdf(double z) {
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

double gaussian_quantile(double eps) {
  if (!(eps > 0.0) || !(eps < 1.0))
    throw DomainError("gaussian_quantile: argument outside (0,1)");

  // rational minimax seed (Acklam), then two Newton corrections
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double dd[] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (eps < plow) {
    double u = std::sqrt(-2.0 * std::log(eps));
    x = (((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
        ((((dd[0] * u + dd[1]) * u + dd[2]) * u + dd[3]) * u + 1.0);
  } else if (eps <= 1.0 - plow) {
    double u = eps - 0.5;
    double r = u * u;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        u /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    double u = std::sqrt(-2.0 * std::log(1.0 - eps));
    x = -(((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
        ((((dd[0] * u + dd[1]) * u + dd[2]) * u + dd[3]) * u + 1.0);
  }
  for (int it = 0; it < 2; ++it) {
    double density = std::exp(-x * x / 2.0) / std::sqrt(2.0 * M_PI);
    if (density <= 0) break;
    x -= (gaussian_cdf(x) - eps) / density;
  }
  return x;
}

std::vector<std::pair<double, double>> iid_sum_atoms(
    const std::vector<double>& values, const std::vector<double>& probs,
    int n) {
  if (values.size() != probs.size() || values.empty())
    throw BadParamsError("iid_sum_atoms: bad alphabet");
  if (n < 1) throw BadParamsError("iid_sum_atoms: n must be >= 1");
  const int d = static_cast<int>(values.size());

  // composition count C(n+d-1, d-1), enumerated exactly
  double log2_count = log2_factorial(n + d - 1) - log2_factorial(n) -
                      log2_factorial(d - 1);
  if (log2_count > 26)  // ~6.7e7 compositions
    throw BudgetExceededError("iid_sum_atoms: too many types");

  std::vector<double> log2_probs(d);
  for (int x = 0; x < d; ++x)
    log2_probs[x] = probs[x] > 0 ? std::log2(probs[x]) : -kInf;

  std::vector<std::pair<double, double>> atoms;  // (value, mass)
  std::vector<int> counts(d, 0);

  // recursive enumeration of compositions of n into d parts
  auto recurse = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == d - 1) {
      counts[pos] = remaining;
      double value = 0.0;
      double log2_mass = log2_factorial(n);
      bool possible = true;
      for (int x = 0; x < d; ++x) {
        if (counts[x] == 0) continue;
        if (log2_probs[x] == -kInf) {
          possible = false;
          break;
        }
        value += counts[x] * values[x];
        log2_mass += counts[x] * log2_probs[x] - log2_factorial(counts[x]);
      }
      if (possible) atoms.emplace_back(value, std::exp2(log2_mass));
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      counts[pos] = k;
      self(self, pos + 1, remaining - k);
    }
  };
  recurse(recurse, 0, n);

  std::sort(atoms.begin(), atoms.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& [v, m] : atoms) {
    if (!merged.empty() &&
        std::abs(v - merged.back().first) <= 1e-12 * std::max(1.0, std::abs(v)))
      merged.back().second += m;
    else
      merged.emplace_back(v, m);
  }
  return merged;
}

double iid_sum_tail(const std::vector<double>& values,
                    const std::vector<double>& probs, int n,
                    double threshold) {
  auto atoms = iid_sum_atoms(values, probs, n);
  double bound = threshold + 1e-12 * std::max(1.0, std::abs(threshold));
  double acc = 0.0, comp = 0.0;  // Kahan accumulation
  for (const auto& [v, m] : atoms) {
    if (v > bound) break;
    double y = m - comp;
    double t = acc + y;
    comp = (t - acc) - y;
    acc = t;
  }
  return std::min(acc, 1.0);
}

double iid_tail(const ClassicalDistribution& p, int n, double gamma_bits) {
  std::vector<double> values;
  std::vector<double> probs;
  for (double w : p.weights) {
    if (w <= 0) continue;
    values.push_back(std::log2(w));
    probs.push_back(w);
  }
  if (values.empty()) throw BadParamsError("iid_tail: empty support");
  return iid_sum_tail(values, probs, n, gamma_bits);
}

namespace {

struct LogRatioVariable {
  std::vector<double> values;  // log2(p/q) atoms
  std::vector<double> probs;   // under p
};

LogRatioVariable log_ratio_variable(const ClassicalDistribution& p,
                                    const ClassicalDistribution& q) {
  if (p.size() != q.size()) throw DimMismatchError("size mismatch");
  LogRatioVariable lr;
  for (size_t x = 0; x < p.size(); ++x) {
    if (p.weights[x] <= 0) continue;
    if (q.weights[x] <= 0)
      throw BadParamsError("support violation in log-ratio variable");
    lr.values.push_back(std::log2(p.weights[x] / q.weights[x]));
    lr.probs.push_back(p.weights[x]);
  }
  return lr;
}

}  // namespace

double berry_esseen_check(const ClassicalDistribution& p,
                          const ClassicalDistribution& q,
                          const std::vector<int>& n_list) {
  SecondOrderStats st = pair_stats(p, q);
  if (!std::isfinite(st.d_bits))
    throw BadParamsError("berry_esseen_check: support violation");
  if (st.v_bits2 <= 1e-14)
    throw DegenerateVarianceError("berry_esseen_check: zero variance");
  LogRatioVariable lr = log_ratio_variable(p, q);
  double sigma = std::sqrt(st.v_bits2);

  double worst = 0.0;
  for (int n : n_list) {
    auto atoms = iid_sum_atoms(lr.values, lr.probs, n);
    double cum = 0.0;
    double scale = sigma * sigma * sigma * std::sqrt(static_cast<double>(n)) /
                   st.t3;
    for (const auto& [v, m] : atoms) {
      double z = (v - n * st.d_bits) / (std::sqrt(static_cast<double>(n)) * sigma);
      double phi = gaussian_cdf(z);
      // deviation just below and at the atom
      worst = std::max(worst, std::abs(cum - phi) * scale);
      cum += m;
      worst = std::max(worst, std::abs(cum - phi) * scale);
    }
  }
  return worst;
}

namespace {

// sup{gamma : Pr{sum <= gamma} <= eps} over the atoms of an exact
// finite-support CDF: the smallest atom whose cumulative mass exceeds eps.
double atoms_quantile(const std::vector<std::pair<double, double>>& atoms,
                      double eps) {
  double cum = 0.0;
  for (const auto& [v, m] : atoms) {
    cum += m;
    if (cum > eps) return v;
  }
  return kInf;
}

}  // namespace

double classical_ds(const ClassicalDistribution& p,
                    const ClassicalDistribution& q, double eps) {
  LogRatioVariable lr = log_ratio_variable(p, q);
  auto atoms = iid_sum_atoms(lr.values, lr.probs, 1);
  return atoms_quantile(atoms, eps);
}

std::pair<double, double> second_order_classical(const ClassicalDistribution& p,
                                                 const ClassicalDistribution& q,
                                                 int n, double eps) {
  if (!(eps > 0.0) || !(eps < 1.0))
    throw BadParamsError("second_order_classical: eps outside (0,1)");
  SecondOrderStats st = pair_stats(p, q);
  LogRatioVariable lr = log_ratio_variable(p, q);
  auto atoms = iid_sum_atoms(lr.values, lr.probs, n);
  double exact = atoms_quantile(atoms, eps);
  double expansion = n * st.d_bits +
                     std::sqrt(n * st.v_bits2) * gaussian_quantile(eps);
  return {exact, expansion};
}

std::tuple<double, double, double> quantum_ds_bounds_check(const Mat& rho,
                                                           const Mat& sigma,
                                                           double eps,
                                                           double delta,
                                                           double eta) {
  if (!(delta > 0) || delta >= std::min(eps, 1.0 - eps) || !(eta > 0) ||
      delta + eta >= eps)
    throw BudgetViolationError("quantum_ds_bounds_check: bad (eps,delta,eta)");
  auto [p, q] = nussbaum_szkola(rho, sigma);
  double v = static_cast<double>(mat::eig_hermitian(sigma).distinct_count());
  double lhs = classical_ds(p, q, eps - eta - delta) +
               std::log2(delta * eta / v);
  double mid = div::info_spectrum_ds(rho, sigma, eps);
  double rhs = classical_ds(p, q, eps + delta) +
               delta + std::log2((eps + delta) * v) -
               std::log2(std::pow(delta, 4.0) * (1.0 - eps - delta));
  return {lhs, mid, rhs};
}

std::vector<double> corollary_428_values(const ClassicalDistribution& p_rho,
                                         double a, double c,
                                         const std::vector<int>& n_list) {
  if (!p_rho.normalized)
    throw BadParamsError("corollary_428_values: spectrum must be normalized");
  std::vector<double> out;
  out.reserve(n_list.size());
  for (int n : n_list) {
    double gamma = -n * a + std::sqrt(static_cast<double>(n)) * c;
    out.push_back(iid_tail(p_rho, n, gamma));
  }
  return out;
}

void write_second_order_csv(std::ostream& out, const ClassicalDistribution& p,
                            const ClassicalDistribution& q,
                            const std::vector<int>& n_list, double eps) {
  out << "n,exact,expansion,bound\n";
  double bound = 0.0;
  char buf[160];
  for (int n : n_list) {
    auto [exact, expansion] = second_order_classical(p, q, n, eps);
    bound = std::max(bound, std::abs(exact - expansion));
    std::snprintf(buf, sizeof(buf), "%d,%.15g,%.15g,%.15g\n", n, exact,
                  expansion, bound);
    out << buf;
  }
}

}  // namespace qdiv::classical
