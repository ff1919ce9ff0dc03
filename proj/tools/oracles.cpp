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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "qdiv/divergence.hpp"

namespace qdiv::oracles {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Pauli expectation helpers for qubit operators.
struct PauliDecomp {
  double id, x, y, z;
};

PauliDecomp pauli_of(const Mat& a) {
  PauliDecomp d;
  d.id = (a(0, 0).real() + a(1, 1).real());
  d.x = (a(0, 1) + a(1, 0)).real();
  d.y = (mat::cplx(0, 1) * (a(0, 1) - a(1, 0))).real();
  d.z = (a(0, 0) - a(1, 1)).real();
  return d;
}

// For a fixed test direction n, tests are T = a 1 + b (n . pauli) with
// b >= 0, a >= b, a + b <= 1. Both the objective and the constraint are
// linear in (a, b), so the optimum sits on a vertex of the small polygon.
double beta_for_direction(const PauliDecomp& dr, const PauliDecomp& ds,
                          double nx, double ny, double nz, double need) {
  double mr = nx * dr.x + ny * dr.y + nz * dr.z;
  double ms = nx * ds.x + ny * ds.y + nz * ds.z;
  // constraints: b >= 0; a - b >= 0; a + b <= 1; dr.id*a + mr*b >= need
  // objective: minimize ds.id*a + ms*b
  struct Line {
    double ca, cb, rhs;  // ca*a + cb*b = rhs
  };
  const Line lines[4] = {{0, 1, 0},        // b = 0
                         {1, -1, 0},       // a = b
                         {1, 1, 1},        // a + b = 1
                         {dr.id, mr, need}};
  auto feasible = [&](double a, double b) {
    const double tol = 1e-11;
    return b >= -tol && a - b >= -tol && a + b <= 1 + tol &&
           dr.id * a + mr * b >= need - tol;
  };
  double best = kInf;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      double det = lines[i].ca * lines[j].cb - lines[j].ca * lines[i].cb;
      if (std::abs(det) < 1e-14) continue;
      double a = (lines[i].rhs * lines[j].cb - lines[j].rhs * lines[i].cb) / det;
      double b = (lines[i].ca * lines[j].rhs - lines[j].ca * lines[i].rhs) / det;
      if (feasible(a, b)) best = std::min(best, ds.id * a + ms * b);
    }
  return best;
}

}  // namespace

double qubit_test_sweep_beta(const Mat& rho, const Mat& sigma, double eps) {
  // tr(T A) for T = a 1 + b n.pauli is a tr(A) + b tr((n.pauli) A)
  PauliDecomp dr = pauli_of(rho);
  PauliDecomp ds = pauli_of(sigma);
  double need = 1.0 - eps;

  double best = kInf;
  double best_theta = 0, best_phi = 0;
  double theta_lo = 0, theta_hi = M_PI, phi_lo = 0, phi_hi = 2 * M_PI;
  int pts = 96;
  for (int pass = 0; pass < 6; ++pass) {
    for (int it = 0; it <= pts; ++it)
      for (int ip = 0; ip <= pts; ++ip) {
        double theta = theta_lo + (theta_hi - theta_lo) * it / pts;
        double phi = phi_lo + (phi_hi - phi_lo) * ip / pts;
        double beta = beta_for_direction(dr, ds, std::sin(theta) * std::cos(phi),
                                         std::sin(theta) * std::sin(phi),
                                         std::cos(theta), need);
        if (beta < best) {
          best = beta;
          best_theta = theta;
          best_phi = phi;
        }
      }
    double dt = (theta_hi - theta_lo) / pts;
    double dp = (phi_hi - phi_lo) / pts;
    theta_lo = best_theta - 3 * dt;
    theta_hi = best_theta + 3 * dt;
    phi_lo = best_phi - 3 * dp;
    phi_hi = best_phi + 3 * dp;
  }
  return best;
}

double np_dual_beta(const Mat& rho, const Mat& sigma, double eps) {
  auto h = [&](double mu) {
    return mu * (1.0 - eps) - mat::positive_part_trace(mu * rho, sigma);
  };
  double hi = 1.0;
  while (h(hi) >= h(hi / 2.0) && hi < 1e12) hi *= 2.0;
  double lo = 0.0;
  const double inv_phi = 0.61803398874989484820;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = h(x1), f2 = h(x2);
  for (int it = 0; it < 200; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = h(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = h(x1);
    }
    if (hi - lo < 1e-14 * std::max(1.0, hi)) break;
  }
  return std::max(h((lo + hi) / 2.0), 0.0);
}

double classical_np_beta(const std::vector<double>& p,
                         const std::vector<double>& q, double eps) {
  std::vector<size_t> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    double ra = q[a] > 0 ? p[a] / q[a] : kInf;
    double rb = q[b] > 0 ? p[b] / q[b] : kInf;
    return ra > rb;
  });
  double need = 1.0 - eps;
  double typeI = 0.0, beta = 0.0;
  for (size_t x : order) {
    if (typeI >= need - 1e-15) break;
    if (typeI + p[x] <= need) {
      typeI += p[x];
      beta += q[x];
    } else {
      double frac = p[x] > 0 ? (need - typeI) / p[x] : 1.0;
      beta += frac * q[x];
      typeI = need;
    }
  }
  return beta;
}

double diagonal_conditional_objective(const std::vector<double>& joint,
                                      int dim_a, double alpha, double s) {
  const int dim_b = 2;
  double acc = 0.0;
  double sb[2] = {s, 1.0 - s};
  for (int a = 0; a < dim_a; ++a)
    for (int b = 0; b < dim_b; ++b) {
      double w = joint[static_cast<size_t>(a) * dim_b + b];
      if (w <= 0) continue;
      if (sb[b] <= 0) return kInf;
      acc += std::pow(w, alpha) * std::pow(sb[b], 1.0 - alpha);
    }
  return std::log2(acc) / (alpha - 1.0);
}

double diagonal_conditional_grid_min(const std::vector<double>& joint,
                                     int dim_a, double alpha, int grid_points) {
  double best = kInf;
  for (int k = 1; k < grid_points; ++k) {
    double s = static_cast<double>(k) / grid_points;
    best = std::min(best,
                    diagonal_conditional_objective(joint, dim_a, alpha, s));
  }
  return best;
}

double mutual_info_grid_min(const Mat& rho_ab, int dim_a, double alpha,
                            int grid_points) {
  const int dim_b = 2;
  Mat rho_a = mat::partial_trace(rho_ab, {dim_a, dim_b}, {0});
  double best = kInf;
  for (int ir = 0; ir <= grid_points; ++ir)
    for (int it = 0; it <= grid_points; ++it)
      for (int ip = 0; ip < grid_points; ++ip) {
        double r = 0.999 * ir / grid_points;
        double theta = M_PI * it / grid_points;
        double phi = 2 * M_PI * ip / grid_points;
        Mat sigma(2, 2);
        double x = r * std::sin(theta) * std::cos(phi);
        double y = r * std::sin(theta) * std::sin(phi);
        double z = r * std::cos(theta);
        sigma << (1 + z) / 2.0, mat::cplx(x, -y) / 2.0, mat::cplx(x, y) / 2.0,
            (1 - z) / 2.0;
        double v =
            div::srd(rho_ab, mat::tensor(rho_a, sigma), alpha).or_inf();
        best = std::min(best, v);
      }
  return best;
}

double gaussian_cdf_quadrature(double z) {
  auto density = [](double t) {
    return std::exp(-t * t / 2.0) / std::sqrt(2.0 * M_PI);
  };
  // adaptive Simpson on [0, |z|]
  std::function<double(double, double, double, double, double, int)> adapt =
      [&](double a, double b, double fa, double fb, double fm,
          int depth) -> double {
    double m = (a + b) / 2.0;
    double lm = (a + m) / 2.0, rm = (m + b) / 2.0;
    double flm = density(lm), frm = density(rm);
    double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
    double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
    if (depth > 24 || std::abs(left + right - whole) < 1e-15)
      return left + right + (left + right - whole) / 15.0;
    return adapt(a, m, fa, fm, flm, depth + 1) +
           adapt(m, b, fm, fb, frm, depth + 1);
  };
  double za = std::abs(z);
  if (za > 40) return z > 0 ? 1.0 : 0.0;
  double integral =
      za == 0 ? 0.0
              : adapt(0, za, density(0), density(za), density(za / 2.0), 0);
  return z >= 0 ? 0.5 + integral : 0.5 - integral;
}

double exhaustive_tail_d2(double p0, double p1, int n, double gamma_bits) {
  double acc = 0.0, comp = 0.0;  // compensated: 2^n tiny masses add up
  double bound = gamma_bits + 1e-12 * std::max(1.0, std::abs(gamma_bits));
  for (long mask = 0; mask < (1L << n); ++mask) {
    int ones = __builtin_popcountll(static_cast<unsigned long long>(mask));
    double log_mass = ones * std::log2(p1) + (n - ones) * std::log2(p0);
    if (log_mass <= bound) {
      double y = std::exp2(log_mass) - comp;
      double t = acc + y;
      comp = (t - acc) - y;
      acc = t;
    }
  }
  return acc;
}

}  // namespace qdiv::oracles
