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

#include "qdiv/coding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qdiv/divergence.hpp"

namespace qdiv::coding {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = 0.69314718055994530941723212145818;

double log2_factorial(double n) { return std::lgamma(n + 1.0) / kLn2; }

double log2_multinomial(int n, const std::vector<int>& counts) {
  double acc = log2_factorial(n);
  for (int k : counts) acc -= log2_factorial(k);
  return acc;
}

double log2_add(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log2(1.0 + std::exp2(lo - hi));
}

void enumerate_compositions(int d, int n,
                            const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> counts(d, 0);
  auto recurse = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == d - 1) {
      counts[pos] = remaining;
      visit(counts);
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      counts[pos] = k;
      self(self, pos + 1, remaining - k);
    }
  };
  recurse(recurse, 0, n);
}

}  // namespace

QuantumSource::QuantumSource(std::vector<double> p, std::vector<CVec> s)
    : probs(std::move(p)), signals(std::move(s)) {
  if (probs.size() != signals.size() || probs.empty())
    throw BadParamsError("source: probabilities and signals must align");
  double sum = 0.0;
  for (double x : probs) {
    if (!(x >= 0)) throw BadParamsError("source: negative probability");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw BadParamsError("source: probabilities sum to " + std::to_string(sum));
  long d = signals.front().size();
  for (const CVec& v : signals) {
    if (v.size() != d) throw DimMismatchError("source: signal dims differ");
    if (std::abs(v.norm() - 1.0) > 1e-10)
      throw BadParamsError("source: signal is not a unit vector");
  }
}

Mat QuantumSource::source_state() const {
  Mat rho = Mat::Zero(dim(), dim());
  for (size_t i = 0; i < probs.size(); ++i)
    rho += probs[i] * (signals[i] * signals[i].adjoint());
  return rho;
}

std::vector<double> QuantumSource::spectrum() const {
  auto s = mat::eig_hermitian(source_state());
  std::vector<double> out(s.dim());
  for (int i = 0; i < s.dim(); ++i) out[i] = std::max(s.eigenvalues[i], 0.0);
  return out;
}

double QuantumSource::entropy() const {
  return div::von_neumann_entropy(source_state());
}

double QuantumSource::entropy_sigma() const {
  auto spec = spectrum();
  double s = 0.0, m2 = 0.0;
  for (double lam : spec) {
    if (lam <= 0) continue;
    double l = std::log2(lam);
    s -= lam * l;
    m2 += lam * l * l;
  }
  return std::sqrt(std::max(m2 - s * s, 0.0));
}

MixedSource::MixedSource(std::vector<double> w, std::vector<QuantumSource> comps)
    : weights(std::move(w)), components(std::move(comps)) {
  if (weights.size() != components.size() || weights.empty())
    throw BadParamsError("mixed source: weights and components must align");
  double sum = 0.0;
  for (double t : weights) {
    if (!(t >= 0)) throw BadParamsError("mixed source: negative weight");
    sum += t;
  }
  if (std::abs(sum - 1.0) > 1e-10)
    throw BadParamsError("mixed source: weights sum to " + std::to_string(sum));
  int m = components.front().num_signals();
  int d = components.front().dim();
  for (const auto& c : components)
    if (c.num_signals() != m || c.dim() != d)
      throw BadParamsError("mixed source: components must share the signal set");
}

namespace {

CVec sequence_signal(const QuantumSource& src, const std::vector<int>& seq) {
  CVec psi = src.signals[seq[0]];
  for (size_t k = 1; k < seq.size(); ++k) {
    CVec next(psi.size() * src.dim());
    const CVec& s = src.signals[seq[k]];
    for (long i = 0; i < psi.size(); ++i)
      for (int j = 0; j < src.dim(); ++j)
        next[i * src.dim() + j] = psi[i] * s[j];
    psi = std::move(next);
  }
  return psi;
}

double sequence_probability(const QuantumSource& src,
                            const std::vector<int>& seq) {
  double p = 1.0;
  for (int i : seq) p *= src.probs[i];
  return p;
}

}  // namespace

double ensemble_avg_fidelity(const QuantumSource& src, const SourceCode& code,
                             long budget) {
  const int m = src.num_signals();
  double total = std::pow(static_cast<double>(m), code.n);
  if (total > static_cast<double>(budget))
    throw IntractableError("ensemble_avg_fidelity: sequence budget exceeded");

  double acc = 0.0;
  std::vector<int> seq(code.n, 0);
  bool done = false;
  while (!done) {
    double p = sequence_probability(src, seq);
    if (p > 0) {
      Mat enc = code.encoder(seq);
      if (enc.size() > 0 && mat::max_abs(enc) > 0) {
        Mat dec = code.decoder.apply(enc);
        CVec psi = sequence_signal(src, seq);
        acc += p * (psi.adjoint() * dec * psi).real()(0, 0);
      }
    }
    int k = code.n - 1;
    while (k >= 0 && ++seq[k] == m) {
      seq[k] = 0;
      --k;
    }
    done = (k < 0);
  }
  return acc;
}

double ensemble_avg_fidelity(const MixedSource& src, const SourceCode& code,
                             long budget) {
  double acc = 0.0;
  for (size_t j = 0; j < src.components.size(); ++j)
    acc += src.weights[j] *
           ensemble_avg_fidelity(src.components[j], code, budget);
  return acc;
}

SourceCode identity_code(const QuantumSource& src, int n) {
  long dn = 1;
  for (int k = 0; k < n; ++k) dn *= src.dim();
  SourceCode code;
  code.n = n;
  code.code_dim = dn;
  QuantumSource copy = src;
  code.encoder = [copy](const std::vector<int>& seq) {
    CVec psi = sequence_signal(copy, seq);
    return Mat(psi * psi.adjoint());
  };
  code.decoder = quantum::identity_channel(static_cast<int>(dn));
  return code;
}

SourceCode projector_code(const QuantumSource& src, int n, double b) {
  const int d = src.dim();
  long dn = 1;
  for (int k = 0; k < n; ++k) dn *= d;
  if (dn > 4096) throw IntractableError("projector_code: space too large");

  Mat rho = src.source_state();
  auto es = mat::eig_hermitian(rho);
  double s_bits = src.entropy();
  double threshold = -n * s_bits - std::sqrt(static_cast<double>(n)) * b;

  // the projector is diagonal in the product eigenbasis of the source state
  Mat proj = Mat::Zero(dn, dn);
  long included = 0;
  std::vector<int> seq(n, 0);
  bool done = false;
  while (!done) {
    double log2_lam = 0.0;
    bool zero = false;
    for (int k = 0; k < n; ++k) {
      double lam = std::max(es.eigenvalues[seq[k]], 0.0);
      if (lam <= 0) {
        zero = true;
        break;
      }
      log2_lam += std::log2(lam);
    }
    if (!zero && log2_lam > threshold) {
      CVec v = CVec::Ones(1);
      for (int k = 0; k < n; ++k) {
        CVec next(v.size() * d);
        for (long i = 0; i < v.size(); ++i)
          for (int j = 0; j < d; ++j)
            next[i * d + j] = v[i] * es.eigenvectors(j, seq[k]);
        v = std::move(next);
      }
      proj += v * v.adjoint();
      ++included;
    }
    int k = n - 1;
    while (k >= 0 && ++seq[k] == d) {
      seq[k] = 0;
      --k;
    }
    done = (k < 0);
  }

  SourceCode code;
  code.n = n;
  code.code_dim = included;
  QuantumSource copy = src;
  code.encoder = [copy, proj](const std::vector<int>& seq2) {
    CVec psi = sequence_signal(copy, seq2);
    Mat projected = proj * (psi * psi.adjoint()) * proj;
    double tr = projected.trace().real();
    if (tr <= 1e-300) return Mat(Mat::Zero(proj.rows(), proj.cols()));
    return Mat(projected / tr);
  };
  code.decoder = quantum::identity_channel(static_cast<int>(dn));
  return code;
}

bool TypeSet::contains_type(const std::vector<int>& t) const {
  return std::find(types.begin(), types.end(), t) != types.end();
}

bool TypeSet::contains_sequence(const std::vector<int>& seq) const {
  std::vector<int> t(d, 0);
  for (int x : seq) {
    if (x < 0 || x >= d) throw BadParamsError("sequence letter out of range");
    ++t[x];
  }
  return contains_type(t);
}

TypeSet build_type_set(int d, int n, double a, double b) {
  if (n > 200) throw BudgetExceededError("build_type_set: n too large");
  TypeSet ts;
  ts.n = n;
  ts.d = d;
  ts.a = a;
  ts.b = b;
  double limit = a * n + b * std::sqrt(static_cast<double>(n));
  double log2_total = -kInf;
  enumerate_compositions(d, n, [&](const std::vector<int>& t) {
    double log2_size = log2_multinomial(n, t);
    if (log2_size <= limit) {
      ts.types.push_back(t);
      log2_total = log2_add(log2_total, log2_size);
    }
  });
  ts.log2_cardinality = log2_total;
  return ts;
}

double universal_dim_bound(int d, int n, double a, double b) {
  return (static_cast<double>(d) * d + d) * std::log2(n + 1.0) + a * n +
         b * std::sqrt(static_cast<double>(n));
}

double achievability_fidelity(const std::vector<double>& spectrum, int n,
                              double b) {
  classical::ClassicalDistribution p(spectrum, false);
  double s = 0.0;
  for (double lam : spectrum) {
    if (lam <= 0) continue;
    s -= lam * std::log2(lam);
  }
  double gamma = -n * s - std::sqrt(static_cast<double>(n)) * b;
  return 1.0 - classical::iid_tail(p, n, gamma);
}

double achievability_fidelity(const QuantumSource& src, int n, double b) {
  return achievability_fidelity(src.spectrum(), n, b);
}

double hayashi_converse_bound(const Mat& rho, long m) {
  return mat::top_m_eigensum(rho, static_cast<int>(m));
}

double hayashi_converse_bound_iid(const std::vector<double>& spectrum, int n,
                                  double log2_m) {
  const int d = static_cast<int>(spectrum.size());
  struct TypeAtom {
    double value;       // log2 of the eigenvalue of the n-fold state
    double log2_count;  // log2 of the multiplicity
  };
  std::vector<TypeAtom> atoms;
  enumerate_compositions(d, n, [&](const std::vector<int>& t) {
    double value = 0.0;
    bool zero = false;
    for (int x = 0; x < d; ++x) {
      if (t[x] == 0) continue;
      if (spectrum[x] <= 0) {
        zero = true;
        break;
      }
      value += t[x] * std::log2(spectrum[x]);
    }
    if (!zero) atoms.push_back({value, log2_multinomial(n, t)});
  });
  std::sort(atoms.begin(), atoms.end(),
            [](const TypeAtom& x, const TypeAtom& y) { return x.value > y.value; });

  double cum_log2_count = -kInf;
  double mass = 0.0;
  for (const TypeAtom& atom : atoms) {
    double next = log2_add(cum_log2_count, atom.log2_count);
    if (next <= log2_m) {
      mass += std::exp2(atom.log2_count + atom.value);
      cum_log2_count = next;
      continue;
    }
    // partial inclusion of the boundary type
    double log2_remaining;
    if (cum_log2_count == -kInf)
      log2_remaining = log2_m;
    else if (log2_m > cum_log2_count)
      log2_remaining =
          cum_log2_count + std::log2(std::exp2(log2_m - cum_log2_count) - 1.0);
    else
      break;
    mass += std::exp2(log2_remaining + atom.value);
    break;
  }
  return std::min(mass, 1.0);
}

double mixed_converse_bound(const std::vector<double>& weights,
                            const std::vector<std::vector<double>>& spectra,
                            int n, double log2_m, double gamma_bits) {
  if (weights.size() != spectra.size())
    throw BadParamsError("mixed_converse_bound: weights/spectra mismatch");
  double acc = 0.0;
  for (size_t j = 0; j < weights.size(); ++j) {
    classical::ClassicalDistribution p(spectra[j], false);
    acc += weights[j] * classical::iid_tail(p, n, -gamma_bits);
  }
  return 1.0 - acc + std::exp2(log2_m - gamma_bits);
}

std::vector<ComponentStats> mixed_source_stats(const MixedSource& src) {
  std::vector<ComponentStats> stats;
  stats.reserve(src.components.size());
  for (size_t j = 0; j < src.components.size(); ++j)
    stats.push_back({src.weights[j], src.components[j].entropy(),
                     src.components[j].entropy_sigma()});
  return stats;
}

namespace {

double normal_mass_at(double b, double sigma) {
  if (sigma > 0) return classical::gaussian_cdf(b / sigma);
  // zero-variance component: a step at b = 0
  if (b > 0) return 1.0;
  if (b < 0) return 0.0;
  return 0.5;
}

}  // namespace

double second_order_rate_from_stats(const std::vector<ComponentStats>& stats,
                                    double a, double eps, double tol_s) {
  if (!(eps > 0) || !(eps < 1))
    throw BadParamsError("second_order_rate: eps outside (0,1)");
  double mass_lt = 0, mass_gt = 0;
  std::vector<ComponentStats> eq;
  for (const auto& st : stats) {
    if (st.entropy > a + tol_s)
      mass_gt += st.weight;
    else if (st.entropy < a - tol_s)
      mass_lt += st.weight;
    else
      eq.push_back(st);
  }
  if (mass_lt >= 1.0 - eps) return -kInf;
  if (mass_gt >= eps) return kInf;

  double target = 1.0 - eps - mass_lt;
  auto g = [&](double b) {
    double acc = 0.0;
    for (const auto& st : eq) acc += st.weight * normal_mass_at(b, st.sigma);
    return acc;
  };
  double lo = -64, hi = 64;
  while (g(lo) > target && lo > -1e6) lo *= 2;
  while (g(hi) < target && hi < 1e6) hi *= 2;
  for (int it = 0; it < 400; ++it) {
    double mid = (lo + hi) / 2.0;
    double val = g(mid);
    if (std::abs(val - target) <= 1e-12) return mid;
    if (val < target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-13 * std::max(1.0, std::abs(hi))) break;
  }
  return (lo + hi) / 2.0;
}

double second_order_rate(const MixedSource& src, double a, double eps,
                         double tol_s) {
  return second_order_rate_from_stats(mixed_source_stats(src), a, eps, tol_s);
}

double first_order_rate_from_stats(const std::vector<ComponentStats>& stats,
                                   double eps, double tol_s) {
  if (!(eps > 0) || !(eps < 1))
    throw BadParamsError("first_order_rate: eps outside (0,1)");
  // cluster entropy levels within tol_s
  std::vector<ComponentStats> sorted = stats;
  std::sort(sorted.begin(), sorted.end(),
            [](const ComponentStats& x, const ComponentStats& y) {
              return x.entropy > y.entropy;
            });
  std::vector<std::pair<double, double>> levels;  // (entropy, mass)
  for (const auto& st : sorted) {
    if (!levels.empty() && levels.back().first - st.entropy <= tol_s)
      levels.back().second += st.weight;
    else
      levels.emplace_back(st.entropy, st.weight);
  }
  double above = 0.0;
  for (const auto& [s, m] : levels) {
    if (std::abs(above - eps) <= 1e-12 || std::abs(above + m - eps) <= 1e-12)
      throw DegenerateEpsilonError("first_order_rate: eps on a mass boundary");
    if (above < eps && above + m > eps) return s;
    above += m;
  }
  throw DegenerateEpsilonError("first_order_rate: no feasible rate");
}

double first_order_rate(const MixedSource& src, double eps, double tol_s) {
  return first_order_rate_from_stats(mixed_source_stats(src), eps, tol_s);
}

std::vector<Fig52Row> figure52(const std::vector<double>& eps_grid,
                               double sigma1, double sigma2, double t) {
  std::vector<ComponentStats> stats{{t, 1.0, sigma1}, {1.0 - t, 1.0, sigma2}};
  std::vector<Fig52Row> rows;
  rows.reserve(eps_grid.size());
  for (double eps : eps_grid) {
    Fig52Row row;
    row.eps = eps;
    row.b = second_order_rate_from_stats(stats, 1.0, eps);
    row.env_first = -sigma1 * classical::gaussian_quantile(eps);
    row.env_second = -sigma2 * classical::gaussian_quantile(eps);
    rows.push_back(row);
  }
  return rows;
}

std::vector<Fig53Row> figure53(const std::vector<int>& n_grid, double eps,
                               double entropy, double sigma) {
  std::vector<Fig53Row> rows;
  rows.reserve(n_grid.size());
  double quantile = classical::gaussian_quantile(eps);
  for (int n : n_grid)
    rows.push_back(
        {n, entropy - sigma * quantile / std::sqrt(static_cast<double>(n))});
  return rows;
}

}  // namespace qdiv::coding
