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

#include "qdiv/converse.hpp"

#include <algorithm>
#include <cmath>

#include "qdiv/divergence.hpp"

namespace qdiv::conv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double kappa(double alpha) { return (1.0 - alpha) / (2.0 * alpha); }

void check_alpha_range(double alpha) {
  if (!(alpha > 0.5) || !(alpha < 1.0))
    throw BadParamsError("converse bounds need alpha in (1/2, 1)");
}

long product(const std::vector<int>& dims) {
  long p = 1;
  for (int d : dims) p *= d;
  return p;
}

// Conditional Renyi entropy of (first | rest) on a bipartite arrangement
// given as an explicit operator; trivial conditioners short-circuit to the
// closed-form entropy so that reductions agree bit-for-bit.
double conditional_term(const Mat& rho_xy, int dim_x, int dim_y, double order,
                        const renyi::OptimizerParams& opt) {
  if (dim_y == 1) {
    Mat rho_x = mat::partial_trace(rho_xy, {dim_x, dim_y}, {0});
    return renyi::renyi_entropy(rho_x, order);
  }
  return renyi::conditional_renyi(rho_xy, dim_x, dim_y, order, opt).value;
}

}  // namespace

ConverseBounds feedback_bounds(const CVec& psi,
                               const std::array<int, 4>& dims_abcr,
                               double q_forward, double q_total, double e,
                               int n, double alpha, const BoundOptions& opts) {
  check_alpha_range(alpha);
  auto [da, db, dc, dr] = dims_abcr;
  std::vector<int> dims{da, db, dc, dr};
  if (psi.size() != product(dims))
    throw DimMismatchError("redistribution bounds: psi does not match dims");
  double beta = div::RenyiOrder::conjugate(alpha);
  Mat psi_full = psi * psi.adjoint();

  Mat rho_ab = mat::partial_trace(psi_full, dims, {0, 1});
  Mat rho_b = mat::partial_trace(psi_full, dims, {1});
  double bracket_sum = renyi::renyi_entropy(rho_ab, beta) -
                       renyi::renyi_entropy(rho_b, alpha) - (q_total + e);

  // The conditional bracket is evaluated through the purification duality:
  // on the global pure state the term against (R|AB) equals minus the
  // beta-conditional entropy of (R|C).
  Mat rho_rb = mat::partial_trace(psi_full, dims, {3, 1});
  Mat rho_rc = mat::partial_trace(psi_full, dims, {3, 2});
  double bracket_cond = conditional_term(rho_rb, dr, db, beta, opts.opt) +
                        conditional_term(rho_rc, dr, dc, beta, opts.opt) -
                        2.0 * q_forward;

  Mat rho_rab = mat::partial_trace(psi_full, dims, {3, 0, 1});
  double mi_large;
  if (static_cast<long>(da) * db == 1) {
    mi_large = 0.0;
  } else if (opts.certified) {
    // certified lower bound: monotonicity in the second slot against 1_AB
    Mat rho_r = mat::partial_trace(psi_full, dims, {3});
    Mat second = mat::tensor(
        rho_r, Mat::Identity(static_cast<long>(da) * db, static_cast<long>(da) * db));
    mi_large = div::srd(rho_rab, second, alpha).or_inf();
  } else {
    mi_large = renyi::renyi_mutual_info(rho_rab, dr, da * db, alpha, opts.opt).value;
  }
  double mi_small = 0.0;
  if (db > 1)
    mi_small = renyi::renyi_mutual_info(rho_rb, dr, db, beta, opts.opt).value;
  double bracket_mutual = mi_large - mi_small - 2.0 * q_forward;

  ConverseBounds out;
  double scale = -static_cast<double>(n) * kappa(alpha);
  out.sum_rate = std::exp2(scale * bracket_sum);
  out.cond = std::exp2(scale * bracket_cond);
  out.mutual = std::exp2(scale * bracket_mutual);
  return out;
}

ConverseBounds redistribution_bounds(const CVec& psi,
                                     const std::array<int, 4>& dims_abcr,
                                     double q, double e, int n, double alpha,
                                     const BoundOptions& opts) {
  return feedback_bounds(psi, dims_abcr, q, q, e, n, alpha, opts);
}

double source_coding_bound(const std::vector<double>& spectrum, double q,
                           int n, double beta) {
  if (!(beta > 1.0)) throw BadParamsError("source_coding_bound: beta must exceed 1");
  double acc = 0.0;
  for (double lam : spectrum)
    if (lam > 0) acc += std::pow(lam, beta);
  double s_beta = std::log2(acc) / (1.0 - beta);
  double iota = (beta - 1.0) / beta;
  return std::exp2(-static_cast<double>(n) * iota * (s_beta - q));
}

MergingBounds coherent_merging_bounds(const CVec& psi_abr,
                                      const std::array<int, 3>& dims, double q,
                                      double e, int n, double alpha,
                                      const BoundOptions& opts) {
  // merging is redistribution with a trivial C system, entanglement gained
  ConverseBounds full = redistribution_bounds(
      psi_abr, {dims[0], dims[1], 1, dims[2]}, q, -e, n, alpha, opts);
  return {full.sum_rate, full.cond};
}

SplittingBounds state_splitting_bounds(const CVec& psi_abr,
                                       const std::array<int, 3>& dims, double q,
                                       double e, int n, double alpha,
                                       const BoundOptions& opts) {
  // splitting is redistribution with a trivial B system; the kept system
  // plays the role of C
  ConverseBounds full = redistribution_bounds(
      psi_abr, {dims[0], 1, dims[1], dims[2]}, q, e, n, alpha, opts);
  return {full.sum_rate, full.cond, full.mutual};
}

double measurement_compression_bound(const Mat& phi_rxxb,
                                     const std::array<int, 4>& dims, double c,
                                     int n, double alpha,
                                     const BoundOptions& opts) {
  check_alpha_range(alpha);
  auto [dr, dx, dxp, db] = dims;
  std::vector<int> all{dr, dx, dxp, db};
  double beta = div::RenyiOrder::conjugate(alpha);

  Mat phi_rb = mat::partial_trace(phi_rxxb, all, {0, 3});
  double cond_rb = conditional_term(phi_rb, dr, db, beta, opts.opt);

  Mat phi_rxb = mat::partial_trace(phi_rxxb, all, {0, 1, 3});
  double cond_rxb;
  if (opts.certified) {
    // upper-bound the subtracted term through a purification duality
    quantum::DensityMatrix state(phi_rxb);
    quantum::PureStateVector pure = quantum::purify(state);
    int rank = pure.dim() / state.dim();
    std::vector<int> pd{dr, dx * db, rank};
    Mat full = pure.amplitudes() * pure.amplitudes().adjoint();
    Mat rho_rp = mat::partial_trace(full, pd, {0, 2});
    cond_rxb = -conditional_term(rho_rp, dr, rank, beta, opts.opt);
  } else {
    cond_rxb =
        renyi::conditional_renyi(phi_rxb, dr, dx * db, alpha, opts.opt).value;
  }

  double bracket = cond_rb - cond_rxb - c;
  return std::exp2(-static_cast<double>(n) * kappa(alpha) * bracket);
}

TightestExponent tightest_exponent(const CVec& psi,
                                   const std::array<int, 4>& dims_abcr,
                                   double q, double e, int n,
                                   const std::vector<double>& alpha_grid,
                                   const BoundOptions& opts) {
  if (alpha_grid.empty()) throw BadParamsError("tightest_exponent: empty grid");
  TightestExponent best;
  best.bound_star = kInf;
  for (double alpha : alpha_grid) {
    ConverseBounds b = redistribution_bounds(psi, dims_abcr, q, e, n, alpha, opts);
    if (b.sum_rate < best.bound_star) {
      best.bound_star = b.sum_rate;
      best.alpha_star = alpha;
      best.exponent = -std::log2(b.sum_rate) / n;
    }
  }
  return best;
}

SaturatingState araki_lieb_saturating_state(double lambda0, double nu0) {
  if (!(lambda0 > 0) || !(lambda0 < 1) || !(nu0 > 0) || !(nu0 < 1))
    throw BadParamsError("araki_lieb_saturating_state: parameters outside (0,1)");
  const double lambda1 = 1.0 - lambda0;
  const double nu1 = 1.0 - nu0;
  // |A| = 2, |B| = 4; two purifications of rho_A with disjoint B supports
  auto basis_vec = [](int a, int b) {
    CVec v = CVec::Zero(8);
    v[static_cast<long>(a) * 4 + b] = 1.0;
    return v;
  };
  SaturatingState out;
  out.eta0 = std::sqrt(lambda0) * basis_vec(0, 0) + std::sqrt(lambda1) * basis_vec(1, 1);
  out.eta1 = std::sqrt(lambda0) * basis_vec(0, 2) + std::sqrt(lambda1) * basis_vec(1, 3);
  out.rho_ab = nu0 * (out.eta0 * out.eta0.adjoint()) +
               nu1 * (out.eta1 * out.eta1.adjoint());
  out.rho_a = mat::partial_trace(out.rho_ab, {2, 4}, {0});
  out.weights = {nu0, nu1};
  return out;
}

// --- PureRegister -----------------------------------------------------------

void PureRegister::init(const CVec& amp, std::vector<int> dims,
                        std::vector<std::string> labels) {
  if (amp.size() != product(dims) || dims.size() != labels.size())
    throw DimMismatchError("register: dims and amplitudes disagree");
  amp_ = amp;
  dims_ = std::move(dims);
  labels_ = std::move(labels);
}

void PureRegister::append(const CVec& amp, std::vector<int> dims,
                          std::vector<std::string> labels) {
  if (amp_.size() == 0) {
    init(amp, std::move(dims), std::move(labels));
    return;
  }
  CVec joined(amp_.size() * amp.size());
  for (long i = 0; i < amp_.size(); ++i)
    for (long j = 0; j < amp.size(); ++j)
      joined[i * amp.size() + j] = amp_[i] * amp[j];
  amp_ = std::move(joined);
  dims_.insert(dims_.end(), dims.begin(), dims.end());
  labels_.insert(labels_.end(), labels.begin(), labels.end());
}

std::vector<int> PureRegister::positions_of(
    const std::vector<std::string>& labels) const {
  std::vector<int> pos;
  pos.reserve(labels.size());
  for (const std::string& name : labels) {
    auto it = std::find(labels_.begin(), labels_.end(), name);
    if (it == labels_.end())
      throw BadParamsError("register: unknown system " + name);
    pos.push_back(static_cast<int>(it - labels_.begin()));
  }
  return pos;
}

void PureRegister::move_to_front(const std::vector<int>& positions) {
  std::vector<int> perm = positions;
  for (int k = 0; k < static_cast<int>(dims_.size()); ++k)
    if (std::find(positions.begin(), positions.end(), k) == positions.end())
      perm.push_back(k);
  amp_ = mat::permute_vector(amp_, dims_, perm);
  std::vector<int> nd(dims_.size());
  std::vector<std::string> nl(labels_.size());
  for (size_t k = 0; k < perm.size(); ++k) {
    nd[k] = dims_[perm[k]];
    nl[k] = labels_[perm[k]];
  }
  dims_ = std::move(nd);
  labels_ = std::move(nl);
}

void PureRegister::apply_channel(
    const std::vector<std::string>& in_labels,
    const quantum::QuantumChannel& channel,
    const std::vector<std::pair<std::string, int>>& out_systems,
    const std::string& env_label) {
  move_to_front(positions_of(in_labels));
  long din = 1;
  for (size_t k = 0; k < in_labels.size(); ++k) din *= dims_[k];
  if (din != channel.in_dim())
    throw DimMismatchError("register: channel input does not match systems");
  long dout = 1;
  for (const auto& [name, d] : out_systems) dout *= d;
  if (dout != channel.out_dim())
    throw DimMismatchError("register: declared outputs do not match channel");

  long rest = amp_.size() / din;
  Mat v = channel.stinespring();  // (env x out) x in
  Mat block(din, rest);
  for (long i = 0; i < din; ++i)
    for (long r = 0; r < rest; ++r) block(i, r) = amp_[i * rest + r];
  Mat moved = v * block;  // (env*out) x rest

  long total = moved.rows() * rest;
  CVec next(total);
  for (long i = 0; i < moved.rows(); ++i)
    for (long r = 0; r < rest; ++r) next[i * rest + r] = moved(i, r);
  amp_ = std::move(next);

  std::vector<int> nd{channel.env_dim()};
  std::vector<std::string> nl{env_label};
  for (const auto& [name, d] : out_systems) {
    nd.push_back(d);
    nl.push_back(name);
  }
  for (size_t k = in_labels.size(); k < dims_.size(); ++k) {
    nd.push_back(dims_[k]);
    nl.push_back(labels_[k]);
  }
  dims_ = std::move(nd);
  labels_ = std::move(nl);
}

double PureRegister::overlap_fidelity(
    const CVec& target, const std::vector<std::string>& target_labels) const {
  PureRegister copy = *this;
  copy.move_to_front(copy.positions_of(target_labels));
  long dt = 1;
  for (size_t k = 0; k < target_labels.size(); ++k) dt *= copy.dims_[k];
  if (dt != target.size())
    throw DimMismatchError("register: target dims mismatch");
  long rest = copy.amp_.size() / dt;
  double acc = 0.0;
  for (long r = 0; r < rest; ++r) {
    mat::cplx overlap(0, 0);
    for (long i = 0; i < dt; ++i)
      overlap += std::conj(target[i]) * copy.amp_[i * rest + r];
    acc += std::norm(overlap);
  }
  return std::sqrt(std::min(acc, 1.0 + 1e-12));
}

Mat PureRegister::reduced_density(const std::vector<std::string>& labels) const {
  PureRegister copy = *this;
  copy.move_to_front(copy.positions_of(labels));
  long dt = 1;
  for (size_t k = 0; k < labels.size(); ++k) dt *= copy.dims_[k];
  long rest = copy.amp_.size() / dt;
  Mat m(dt, rest);
  for (long i = 0; i < dt; ++i)
    for (long r = 0; r < rest; ++r) m(i, r) = copy.amp_[i * rest + r];
  return m * m.adjoint();
}

CVec tensor_power_grouped(const CVec& psi, const std::vector<int>& dims, int n) {
  if (n == 1) return psi;
  CVec power = psi;
  for (int c = 1; c < n; ++c) {
    CVec next(power.size() * psi.size());
    for (long i = 0; i < power.size(); ++i)
      for (long j = 0; j < psi.size(); ++j)
        next[i * psi.size() + j] = power[i] * psi[j];
    power = std::move(next);
  }
  const int s = static_cast<int>(dims.size());
  std::vector<int> rep_dims;
  for (int c = 0; c < n; ++c)
    rep_dims.insert(rep_dims.end(), dims.begin(), dims.end());
  // regroup (A1 B1 .. A2 B2 ..) -> (A1 A2 .. B1 B2 ..)
  std::vector<int> perm;
  for (int sys = 0; sys < s; ++sys)
    for (int c = 0; c < n; ++c) perm.push_back(c * s + sys);
  return mat::permute_vector(power, rep_dims, perm);
}

namespace {

CVec mes_vector(int k) { return quantum::maximally_entangled_vector(k); }

long ipow(int base, int exp) {
  long p = 1;
  for (int i = 0; i < exp; ++i) p *= base;
  return p;
}

}  // namespace

double simulate(const RedistributionProtocol& p) {
  auto [da, db, dc, dr] = p.dims;
  long dan = ipow(da, p.n), dbn = ipow(db, p.n), dcn = ipow(dc, p.n),
       drn = ipow(dr, p.n);
  if (dan * dbn * dcn * drn * static_cast<long>(p.k) * p.k > (1L << 12))
    throw IntractableError("simulate: global dimension exceeds the budget");

  CVec psin = tensor_power_grouped(p.psi, {da, db, dc, dr}, p.n);
  PureRegister reg;
  reg.init(mes_vector(p.k), {p.k, p.k}, {"Ta", "Tb"});
  reg.append(psin,
             {static_cast<int>(dan), static_cast<int>(dbn),
              static_cast<int>(dcn), static_cast<int>(drn)},
             {"A", "B", "C", "R"});

  reg.apply_channel({"A", "C", "Ta"}, p.encoder,
                    {{"Cp", static_cast<int>(dcn)},
                     {"Tap", p.m},
                     {"Q", p.q_dim}},
                    "E1");
  reg.apply_channel({"Q", "B", "Tb"}, p.decoder,
                    {{"Tbp", p.m},
                     {"Ap", static_cast<int>(dan)},
                     {"Bp", static_cast<int>(dbn)}},
                    "E2");

  // target: the fresh MES together with the untouched n-fold state
  CVec mes = mes_vector(p.m);
  CVec tvec(static_cast<long>(p.m) * p.m * dan * dbn * dcn * drn);
  for (long i = 0; i < mes.size(); ++i)
    for (long j = 0; j < psin.size(); ++j)
      tvec[i * psin.size() + j] = mes[i] * psin[j];
  return reg.overlap_fidelity(tvec, {"Tap", "Tbp", "Ap", "Bp", "Cp", "R"});
}

double FeedbackProtocol::q_forward_rate() const {
  double acc = 0.0;
  for (int d : q_dims) acc += std::log2(static_cast<double>(d));
  return acc / n;
}

double FeedbackProtocol::q_total_rate() const {
  double acc = 0.0;
  for (int d : qb_dims) acc += std::log2(static_cast<double>(d));
  return q_forward_rate() + acc / n;
}

double simulate(const FeedbackProtocol& p) {
  auto [da, db, dc, dr] = p.dims;
  const int rounds = p.rounds();
  if (rounds < 1 || static_cast<int>(p.decoders.size()) != rounds ||
      static_cast<int>(p.q_dims.size()) != rounds ||
      static_cast<int>(p.qb_dims.size()) != rounds - 1)
    throw BadParamsError("feedback protocol: inconsistent round data");

  long dan = ipow(da, p.n), dbn = ipow(db, p.n), dcn = ipow(dc, p.n),
       drn = ipow(dr, p.n);
  CVec psin = tensor_power_grouped(p.psi, {da, db, dc, dr}, p.n);
  PureRegister reg;
  reg.init(mes_vector(p.k), {p.k, p.k}, {"Ta", "Tb"});
  reg.append(psin,
             {static_cast<int>(dan), static_cast<int>(dbn),
              static_cast<int>(dcn), static_cast<int>(drn)},
             {"A", "B", "C", "R"});

  for (int i = 0; i < rounds; ++i) {
    std::string q_label = "Q" + std::to_string(i + 1);
    bool last = (i == rounds - 1);
    // encoding
    if (i == 0) {
      std::vector<std::pair<std::string, int>> outs;
      if (last)
        outs = {{q_label, p.q_dims[i]}, {"Cp", static_cast<int>(dcn)}, {"Tap", p.m}};
      else
        outs = {{q_label, p.q_dims[i]}, {"Amem", p.a_mem_dims[i]}};
      reg.apply_channel({"A", "C", "Ta"}, p.encoders[i], outs,
                        "E" + std::to_string(i + 1));
    } else {
      std::vector<std::pair<std::string, int>> outs;
      if (last)
        outs = {{q_label, p.q_dims[i]}, {"Cp", static_cast<int>(dcn)}, {"Tap", p.m}};
      else
        outs = {{q_label, p.q_dims[i]}, {"Amem", p.a_mem_dims[i]}};
      reg.apply_channel({"Qb" + std::to_string(i), "Amem"}, p.encoders[i], outs,
                        "E" + std::to_string(i + 1));
    }
    // decoding
    if (i == 0 && !last) {
      reg.apply_channel({q_label, "B", "Tb"}, p.decoders[i],
                        {{"Qb1", p.qb_dims[i]}, {"Bmem", p.b_mem_dims[i]}},
                        "D1");
    } else if (i == 0 && last) {
      reg.apply_channel({q_label, "B", "Tb"}, p.decoders[i],
                        {{"Tbp", p.m},
                         {"Ap", static_cast<int>(dan)},
                         {"Bp", static_cast<int>(dbn)}},
                        "D1");
    } else if (!last) {
      reg.apply_channel({q_label, "Bmem"}, p.decoders[i],
                        {{"Qb" + std::to_string(i + 1), p.qb_dims[i]},
                         {"Bmem", p.b_mem_dims[i]}},
                        "D" + std::to_string(i + 1));
    } else {
      reg.apply_channel({q_label, "Bmem"}, p.decoders[i],
                        {{"Tbp", p.m},
                         {"Ap", static_cast<int>(dan)},
                         {"Bp", static_cast<int>(dbn)}},
                        "D" + std::to_string(i + 1));
    }
  }

  std::vector<int> tdims{p.m, p.m, static_cast<int>(dan), static_cast<int>(dbn),
                         static_cast<int>(dcn), static_cast<int>(drn)};
  (void)tdims;
  CVec mes = mes_vector(p.m);
  CVec tvec(static_cast<long>(p.m) * p.m * dan * dbn * dcn * drn);
  for (long i = 0; i < mes.size(); ++i)
    for (long j = 0; j < psin.size(); ++j)
      tvec[i * psin.size() + j] = mes[i] * psin[j];
  return reg.overlap_fidelity(tvec, {"Tap", "Tbp", "Ap", "Bp", "Cp", "R"});
}

Mat ideal_measured_state(const CVec& psi_rab, const std::array<int, 3>& dims,
                         const std::vector<Mat>& povm) {
  auto [dr, da, db] = dims;
  std::vector<int> all{dr, da, db};
  const int nx = static_cast<int>(povm.size());
  Mat psi_full = psi_rab * psi_rab.adjoint();
  Mat phi = Mat::Zero(static_cast<long>(dr) * nx * nx * db,
                      static_cast<long>(dr) * nx * nx * db);
  for (int x = 0; x < nx; ++x) {
    Mat lifted = mat::embed(povm[x], all, {1});
    Mat weighted = lifted * psi_full;  // tr_A picks up the POVM weight
    Mat omega = mat::partial_trace((weighted + weighted.adjoint()) / 2.0, all,
                                   {0, 2});
    Mat xx = Mat::Zero(nx, nx);
    xx(x, x) = 1.0;
    // assemble on (R, B, X, X') then order (R, X, X', B)
    Mat block = mat::tensor(mat::tensor(omega, xx), xx);
    phi += mat::permute_systems(block, {dr, db, nx, nx}, {0, 2, 3, 1});
  }
  return (phi + phi.adjoint()) / 2.0;
}

double simulate(const MeasurementCompressionProtocol& p) {
  auto [dr, da, db] = p.dims;
  const int nx = static_cast<int>(p.povm.size());

  PureRegister reg;
  reg.init(p.psi, {dr, da, db}, {"R", "A", "B"});
  // purified shared randomness: maximally correlated classical state
  CVec chi = CVec::Zero(static_cast<long>(p.m_dim) * p.m_dim * p.m_dim);
  for (int i = 0; i < p.m_dim; ++i)
    chi[(static_cast<long>(i) * p.m_dim + i) * p.m_dim + i] =
        1.0 / std::sqrt(static_cast<double>(p.m_dim));
  reg.append(chi, {p.m_dim, p.m_dim, p.m_dim}, {"Ma", "Mb", "Mr"});

  reg.apply_channel({"A", "Ma"}, p.encoder,
                    {{"Xbar", nx}, {"L", p.l_dim}}, "E1");
  reg.apply_channel({"L", "B", "Mb"}, p.decoder,
                    {{"Xhat", nx}, {"Bp", db}}, "D1");

  Mat sigma = reg.reduced_density({"R", "Xbar", "Xhat", "Bp"});
  Mat phi = ideal_measured_state(p.psi, p.dims, p.povm);
  return div::fidelity(phi, sigma);
}

}  // namespace qdiv::conv
