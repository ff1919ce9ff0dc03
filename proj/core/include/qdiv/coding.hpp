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

#ifndef QDIV_CODING_HPP
#define QDIV_CODING_HPP

#include <functional>
#include <vector>

#include "qdiv/classical.hpp"
#include "qdiv/matcore.hpp"
#include "qdiv/quantum.hpp"

namespace qdiv::coding {

using mat::CVec;
using mat::Mat;

/// Pure-state ensemble with emission probabilities.
struct QuantumSource {
  std::vector<double> probs;
  std::vector<CVec> signals;

  QuantumSource(std::vector<double> p, std::vector<CVec> s);
  int dim() const { return static_cast<int>(signals.front().size()); }
  int num_signals() const { return static_cast<int>(signals.size()); }
  Mat source_state() const;
  std::vector<double> spectrum() const;
  double entropy() const;        // S(rho), bits
  double entropy_sigma() const;  // sqrt(V(rho||1)), bits
};

/// Finite mixture of memoryless sources over a shared signal set; quadrature
/// nodes of a continuous mixture enter as additional components.
struct MixedSource {
  std::vector<double> weights;
  std::vector<QuantumSource> components;

  MixedSource(std::vector<double> w, std::vector<QuantumSource> comps);
};

/// Visible code: the encoder may be an arbitrary map from index sequences to
/// states on the code space (trace <= 1; zero marks an unencodable input).
struct SourceCode {
  int n = 1;
  long code_dim = 1;
  std::function<Mat(const std::vector<int>&)> encoder;
  quantum::QuantumChannel decoder;
};

/// Exact ensemble average fidelity by enumerating the m^n signal sequences.
double ensemble_avg_fidelity(const QuantumSource& src, const SourceCode& code,
                             long budget = 2000000);
double ensemble_avg_fidelity(const MixedSource& src, const SourceCode& code,
                             long budget = 2000000);

/// Identity code (no compression) and the spectral projector code that keeps
/// the high-probability subspace of rate exponent n S + sqrt(n) b.
SourceCode identity_code(const QuantumSource& src, int n);
SourceCode projector_code(const QuantumSource& src, int n, double b);

struct TypeSet {
  int n = 0;
  int d = 0;
  double a = 0, b = 0;
  std::vector<std::vector<int>> types;  // admitted compositions of n
  double log2_cardinality = 0;          // log2 of the number of sequences

  bool contains_type(const std::vector<int>& t) const;
  bool contains_sequence(const std::vector<int>& seq) const;
};

TypeSet build_type_set(int d, int n, double a, double b);

/// log2 of the universal code-space dimension bound.
double universal_dim_bound(int d, int n, double a, double b);

/// Lower bound on the achievable fidelity of the universal projector code,
/// exact from the source spectrum.
double achievability_fidelity(const std::vector<double>& spectrum, int n,
                              double b);
double achievability_fidelity(const QuantumSource& src, int n, double b);

/// Converse: no code of dimension M beats the top-M eigenvalue mass.
double hayashi_converse_bound(const Mat& rho, long m);

/// Same bound for n-fold i.i.d. source states, log-domain exact in the type
/// picture; log2_m is the log2 of the code dimension.
double hayashi_converse_bound_iid(const std::vector<double>& spectrum, int n,
                                  double log2_m);

/// Mixed-source fidelity bound: 1 - sum_j t_j tail_j + 2^(log2_m - gamma).
double mixed_converse_bound(const std::vector<double>& weights,
                            const std::vector<std::vector<double>>& spectra,
                            int n, double log2_m, double gamma_bits);

struct ComponentStats {
  double weight = 0;
  double entropy = 0;
  double sigma = 0;
};

std::vector<ComponentStats> mixed_source_stats(const MixedSource& src);

/// Second-order rate at first-order rate a and error eps; +-infinity when a
/// is off the feasible first-order rate.
double second_order_rate_from_stats(const std::vector<ComponentStats>& stats,
                                    double a, double eps, double tol_s = 1e-9);
double second_order_rate(const MixedSource& src, double a, double eps,
                         double tol_s = 1e-9);

/// The unique feasible first-order rate.
double first_order_rate_from_stats(const std::vector<ComponentStats>& stats,
                                   double eps, double tol_s = 1e-9);
double first_order_rate(const MixedSource& src, double eps,
                        double tol_s = 1e-9);

struct Fig52Row {
  double eps = 0, b = 0, env_first = 0, env_second = 0;
};
std::vector<Fig52Row> figure52(const std::vector<double>& eps_grid,
                               double sigma1 = 0.235, double sigma2 = 0.712,
                               double t = 0.425);

struct Fig53Row {
  int n = 0;
  double rate = 0;
};
std::vector<Fig53Row> figure53(const std::vector<int>& n_grid, double eps,
                               double entropy = 0.9744, double sigma = 0.2693);

}  // namespace qdiv::coding

#endif
