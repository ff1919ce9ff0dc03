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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "qdiv/classical.hpp"
#include "qdiv/coding.hpp"
#include "qdiv/converse.hpp"
#include "qdiv/divergence.hpp"
#include "qdiv/io.hpp"
#include "qdiv/renyi.hpp"
#include "suites.hpp"

namespace {

using qdiv::io::format_double;
using Mat = qdiv::mat::Mat;

constexpr int kExitBadInput = 2;
constexpr int kExitSupportViolation = 3;

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw qdiv::ParseError("not a number: '" + item + "'");
    }
  }
  return out;
}

std::vector<int> parse_ints(const std::string& csv) {
  std::vector<int> out;
  for (double x : parse_doubles(csv)) out.push_back(static_cast<int>(x));
  return out;
}

std::ostream& open_sink(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw qdiv::ParseError("cannot open output file " + path);
  return file;
}

struct ComputeArgs {
  std::string quantity;
  std::vector<std::string> files;
  double alpha = 2.0;
  double z = 1.0;
  double eps = 0.5;
  std::string dims;
  std::uint64_t seed = 1;
  std::string out;
};

double compute_value(const ComputeArgs& a) {
  auto need_files = [&](size_t n) {
    if (a.files.size() != n)
      throw qdiv::ParseError("quantity '" + a.quantity + "' expects " +
                             std::to_string(n) + " operand file(s)");
  };
  auto load2 = [&]() {
    need_files(2);
    return std::pair<Mat, Mat>{qdiv::io::load_qmtx(a.files[0]),
                               qdiv::io::load_qmtx(a.files[1])};
  };
  auto bipartite_dims = [&](size_t n) {
    std::vector<int> dims = parse_ints(a.dims);
    if (dims.size() != n)
      throw qdiv::ParseError("quantity '" + a.quantity +
                             "' needs --dims with " + std::to_string(n) +
                             " entries");
    return dims;
  };

  const std::string& q = a.quantity;
  if (q == "qre") {
    auto [r, s] = load2();
    return qdiv::div::qre(r, s).or_inf();
  }
  if (q == "qiv") {
    auto [r, s] = load2();
    return qdiv::div::qiv(r, s);
  }
  if (q == "rre") {
    auto [r, s] = load2();
    return qdiv::div::rre(r, s, a.alpha).or_inf();
  }
  if (q == "srd") {
    auto [r, s] = load2();
    return qdiv::div::srd(r, s, a.alpha).or_inf();
  }
  if (q == "alpha_z") {
    auto [r, s] = load2();
    return qdiv::div::alpha_z(r, s, a.alpha, a.z).or_inf();
  }
  if (q == "dmin") {
    auto [r, s] = load2();
    return qdiv::div::dmin(r, s);
  }
  if (q == "dmax") {
    auto [r, s] = load2();
    return qdiv::div::dmax(r, s).or_inf();
  }
  if (q == "d0") {
    auto [r, s] = load2();
    return qdiv::div::rre(r, s, 0.0).or_inf();
  }
  if (q == "dh") {
    auto [r, s] = load2();
    return qdiv::div::hypothesis_testing_re(r, s, a.eps);
  }
  if (q == "ds") {
    auto [r, s] = load2();
    return qdiv::div::info_spectrum_ds(r, s, a.eps);
  }
  if (q == "uds") {
    auto [r, s] = load2();
    return qdiv::div::underline_ds(r, s, a.eps);
  }
  if (q == "ods") {
    auto [r, s] = load2();
    return qdiv::div::overline_ds(r, s, a.eps);
  }
  if (q == "fid") {
    auto [r, s] = load2();
    return qdiv::div::fidelity(r, s);
  }
  if (q == "tdist") {
    auto [r, s] = load2();
    return qdiv::div::trace_distance(r, s);
  }
  if (q == "Salpha") {
    need_files(1);
    return qdiv::renyi::renyi_entropy(qdiv::io::load_qmtx(a.files[0]), a.alpha);
  }
  if (q == "cond") {
    need_files(1);
    auto dims = bipartite_dims(2);
    qdiv::renyi::OptimizerParams params;
    params.seed = a.seed;
    return qdiv::renyi::conditional_renyi(qdiv::io::load_qmtx(a.files[0]),
                                          dims[0], dims[1], a.alpha, params)
        .value;
  }
  if (q == "mi") {
    need_files(1);
    auto dims = bipartite_dims(2);
    qdiv::renyi::OptimizerParams params;
    params.seed = a.seed;
    return qdiv::renyi::renyi_mutual_info(qdiv::io::load_qmtx(a.files[0]),
                                          dims[0], dims[1], a.alpha, params)
        .value;
  }
  if (q == "cmi") {
    need_files(1);
    auto dims = bipartite_dims(3);
    return qdiv::renyi::renyi_cmi(qdiv::io::load_qmtx(a.files[0]), dims[0],
                                  dims[1], dims[2], a.alpha);
  }
  if (q == "qcoh") {
    need_files(1);
    qdiv::renyi::OptimizerParams params;
    params.seed = a.seed;
    return qdiv::renyi::renyi_coherent_info(qdiv::io::load_qchn(a.files[0]),
                                            a.alpha, params)
        .value;
  }
  throw qdiv::ParseError("unknown quantity '" + q + "'");
}

int cmd_compute(const ComputeArgs& a) {
  double value = compute_value(a);
  std::ofstream file;
  std::ostream& out = open_sink(a.out, file);
  out << a.quantity << "," << format_double(value) << "\n";
  return 0;
}

int cmd_verify(const std::string& name, std::uint64_t seed, long trials,
               int jobs, const std::string& out_path) {
  std::vector<const qdiv::suites::SuiteSpec*> selected;
  if (name == "all") {
    for (const auto& s : qdiv::suites::registry()) selected.push_back(&s);
  } else {
    const auto* s = qdiv::suites::find(name);
    if (!s) throw qdiv::ParseError("unknown suite '" + name + "'");
    selected.push_back(s);
  }

  std::ofstream file;
  std::ostream& out = open_sink(out_path, file);
  out << "suite,trial,margin\n";
  bool all_pass = true;
  std::ostringstream summaries;
  for (const auto* spec : selected) {
    long n = trials > 0 ? trials : spec->default_trials;
    qdiv::suites::SuiteRun run = qdiv::suites::run_suite(*spec, seed, n, jobs);
    for (long i = 0; i < n; ++i)
      out << spec->name << "," << i << "," << format_double(run.margins[i])
          << "\n";
    summaries << "summary," << spec->name << "," << n << ","
              << format_double(run.worst) << ","
              << (run.pass ? "pass" : "fail") << "\n";
    if (!run.pass) {
      all_pass = false;
      for (long i = 0; i < n; ++i)
        if (run.margins[i] > run.tolerance)
          summaries << "violation," << spec->name << "," << i << ","
                    << qdiv::derive_seed(seed, i) << "\n";
    }
  }
  out << summaries.str();
  return all_pass ? 0 : 1;
}

int cmd_second_order(const std::string& path, const std::vector<double>& eps,
                     double tol_s, const std::string& out_path) {
  if (eps.empty()) throw qdiv::ParseError("--eps list is empty");
  qdiv::coding::MixedSource src = qdiv::io::load_qsrc(path);
  std::ofstream file;
  std::ostream& out = open_sink(out_path, file);
  out << "eps,a,b\n";
  for (double e : eps) {
    double a = qdiv::coding::first_order_rate(src, e, tol_s);
    double b = qdiv::coding::second_order_rate(src, a, e, tol_s);
    out << format_double(e) << "," << format_double(a) << ","
        << format_double(b) << "\n";
  }
  return 0;
}

int cmd_figure(const std::string& kind, double eps, double eps_start,
               double eps_stop, double eps_step,
               const std::vector<int>& n_list, const std::string& out_path) {
  std::ofstream file;
  std::ostream& out = open_sink(out_path, file);
  if (kind == "fig52") {
    out << "eps,b,env1,env2\n";
    std::vector<double> grid;
    for (double e = eps_start; e <= eps_stop + 1e-12; e += eps_step)
      grid.push_back(e);
    for (const auto& row : qdiv::coding::figure52(grid))
      out << format_double(row.eps) << "," << format_double(row.b) << ","
          << format_double(row.env_first) << ","
          << format_double(row.env_second) << "\n";
    return 0;
  }
  if (kind == "fig53") {
    out << "n,rate\n";
    for (const auto& row : qdiv::coding::figure53(n_list, eps))
      out << row.n << "," << format_double(row.rate) << "\n";
    return 0;
  }
  throw qdiv::ParseError("unknown figure kind '" + kind + "'");
}

int cmd_protocol(const std::string& path, const std::vector<double>& alphas,
                 std::uint64_t seed, const std::string& out_path) {
  qdiv::io::ProtocolFile pf = qdiv::io::load_qproto(path);
  const qdiv::conv::RedistributionProtocol& p = pf.protocol;
  double achieved = qdiv::conv::simulate(p);
  qdiv::conv::BoundOptions opts;
  opts.opt.seed = seed;
  std::ofstream file;
  std::ostream& out = open_sink(out_path, file);
  out << "alpha,bound_eq619,bound_eq620,bound_eq621,achieved_F\n";
  for (double alpha : alphas) {
    qdiv::conv::ConverseBounds b = qdiv::conv::redistribution_bounds(
        p.psi, p.dims, p.q_rate(), p.e_rate(), p.n, alpha, opts);
    out << format_double(alpha) << "," << format_double(b.sum_rate) << ","
        << format_double(b.cond) << "," << format_double(b.mutual) << ","
        << format_double(achieved) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for quantum divergences, second-order "
               "rates, and strong-converse bounds"};
  app.require_subcommand(1);

  ComputeArgs cargs;
  auto* compute = app.add_subcommand("compute", "evaluate a single quantity");
  compute->add_option("quantity", cargs.quantity)->required();
  compute->add_option("files", cargs.files, "QMTX/QCHN operand files");
  compute->add_option("--alpha", cargs.alpha);
  compute->add_option("--z", cargs.z);
  compute->add_option("--eps", cargs.eps);
  compute->add_option("--dims", cargs.dims);
  compute->add_option("--seed", cargs.seed);
  compute->add_option("--out", cargs.out);

  std::string suite_name;
  std::uint64_t seed = 0;
  long trials = 0;
  int jobs = 1;
  std::string out_path;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite_name)->required();
  verify->add_option("--seed", seed)->required();
  verify->add_option("--trials", trials);
  verify->add_option("--jobs", jobs);
  verify->add_option("--out", out_path);

  std::string qsrc_path;
  std::string eps_list = "0.25";
  double tol_s = 1e-9;
  std::string so_out;
  auto* second = app.add_subcommand("second-order",
                                    "solve first and second order rates");
  second->add_option("source", qsrc_path)->required();
  second->add_option("--eps", eps_list);
  second->add_option("--tol-S", tol_s);
  second->add_option("--out", so_out);

  std::string fig_kind;
  double fig_eps = 0.25;
  double eps_start = 0.01, eps_stop = 0.99, eps_step = 0.01;
  std::string n_list;
  std::string fig_out;
  auto* figure = app.add_subcommand("figure", "emit figure data as CSV");
  figure->add_option("kind", fig_kind)->required();
  figure->add_option("--eps", fig_eps);
  figure->add_option("--eps-start", eps_start);
  figure->add_option("--eps-stop", eps_stop);
  figure->add_option("--eps-step", eps_step);
  figure->add_option("--n-list", n_list);
  figure->add_option("--out", fig_out);

  std::string proto_path;
  std::string proto_alphas = "0.6,0.7,0.8,0.9";
  std::uint64_t proto_seed = 1;
  std::string proto_out;
  auto* protocol = app.add_subcommand(
      "protocol", "simulate a protocol descriptor and report its bounds");
  protocol->add_option("descriptor", proto_path)->required();
  protocol->add_option("--alpha", proto_alphas);
  protocol->add_option("--seed", proto_seed);
  protocol->add_option("--out", proto_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*compute) return cmd_compute(cargs);
    if (*verify) return cmd_verify(suite_name, seed, trials, jobs, out_path);
    if (*second)
      return cmd_second_order(qsrc_path, parse_doubles(eps_list), tol_s,
                              so_out);
    if (*figure) {
      std::vector<int> ns = parse_ints(n_list);
      if (ns.empty()) ns = {10, 20, 50, 100, 200, 500, 1000};
      return cmd_figure(fig_kind, fig_eps, eps_start, eps_stop, eps_step, ns,
                        fig_out);
    }
    if (*protocol)
      return cmd_protocol(proto_path, parse_doubles(proto_alphas), proto_seed,
                          proto_out);
  } catch (const qdiv::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const qdiv::SupportViolationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSupportViolation;
  } catch (const qdiv::SingularMarginalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSupportViolation;
  } catch (const qdiv::PreconditionViolationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSupportViolation;
  } catch (const qdiv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return 0;
}
