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

#include "qdiv/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qdiv::io {

namespace {

double read_double(std::istream& in, const char* what) {
  double x;
  if (!(in >> x)) throw ParseError(std::string("expected a number for ") + what);
  if (!std::isfinite(x))
    throw ParseError(std::string("non-finite value for ") + what);
  return x;
}

long read_count(std::istream& in, const char* what) {
  long x;
  if (!(in >> x) || x < 0)
    throw ParseError(std::string("expected a count for ") + what);
  return x;
}

std::string read_tag(std::istream& in, const char* what) {
  std::string tag;
  if (!(in >> tag)) throw ParseError(std::string("expected tag ") + what);
  return tag;
}

void expect_tag(std::istream& in, const std::string& expected) {
  std::string tag = read_tag(in, expected.c_str());
  if (tag != expected)
    throw ParseError("expected '" + expected + "', found '" + tag + "'");
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  return out;
}

}  // namespace

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

Mat read_qmtx(std::istream& in) {
  expect_tag(in, "QMTX");
  long rows = read_count(in, "rows");
  long cols = read_count(in, "cols");
  if (rows <= 0 || cols <= 0) throw ParseError("QMTX: empty shape");
  Mat m(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) {
      double re = read_double(in, "entry");
      double im = read_double(in, "entry");
      m(i, j) = mat::cplx(re, im);
    }
  return m;
}

void write_qmtx(std::ostream& out, const Mat& m) {
  out << "QMTX " << m.rows() << " " << m.cols() << "\n";
  for (long i = 0; i < m.rows(); ++i) {
    for (long j = 0; j < m.cols(); ++j) {
      if (j) out << " ";
      char buf[80];
      std::snprintf(buf, sizeof(buf), "%.17g %.17g", m(i, j).real(),
                    m(i, j).imag());
      out << buf;
    }
    out << "\n";
  }
}

Mat load_qmtx(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_qmtx(in);
}

void save_qmtx(const std::string& path, const Mat& m) {
  std::ofstream out = open_output(path);
  write_qmtx(out, m);
}

quantum::QuantumChannel read_qchn(std::istream& in) {
  expect_tag(in, "QCHN");
  long n_kraus = read_count(in, "n_kraus");
  long out_dim = read_count(in, "out_dim");
  long in_dim = read_count(in, "in_dim");
  if (n_kraus < 1) throw ParseError("QCHN: needs at least one Kraus operator");
  std::vector<Mat> kraus;
  kraus.reserve(n_kraus);
  for (long k = 0; k < n_kraus; ++k) {
    Mat op = read_qmtx(in);
    if (op.rows() != out_dim || op.cols() != in_dim)
      throw ParseError("QCHN: Kraus block dims disagree with header");
    kraus.push_back(std::move(op));
  }
  try {
    return quantum::QuantumChannel(std::move(kraus), 1e-8);
  } catch (const Error& e) {
    throw ParseError(std::string("QCHN: ") + e.what());
  }
}

void write_qchn(std::ostream& out, const quantum::QuantumChannel& ch) {
  out << "QCHN " << ch.env_dim() << " " << ch.out_dim() << " " << ch.in_dim()
      << "\n";
  for (const Mat& k : ch.kraus()) write_qmtx(out, k);
}

quantum::QuantumChannel load_qchn(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_qchn(in);
}

void save_qchn(const std::string& path, const quantum::QuantumChannel& ch) {
  std::ofstream out = open_output(path);
  write_qchn(out, ch);
}

coding::MixedSource read_qsrc(std::istream& in) {
  expect_tag(in, "QSRC");
  long m = read_count(in, "signals");
  long d = read_count(in, "dim");
  long k = read_count(in, "components");
  if (m < 1 || d < 1 || k < 1) throw ParseError("QSRC: empty shape");

  std::vector<mat::CVec> signals;
  signals.reserve(m);
  for (long i = 0; i < m; ++i) {
    mat::CVec v(d);
    for (long j = 0; j < d; ++j) {
      double re = read_double(in, "amplitude");
      double im = read_double(in, "amplitude");
      v[j] = mat::cplx(re, im);
    }
    signals.push_back(std::move(v));
  }

  std::vector<double> weights;
  std::vector<coding::QuantumSource> comps;
  for (long j = 0; j < k; ++j) {
    weights.push_back(read_double(in, "component weight"));
    std::vector<double> probs(m);
    for (long i = 0; i < m; ++i) probs[i] = read_double(in, "probability");
    try {
      comps.emplace_back(probs, signals);
    } catch (const Error& e) {
      throw ParseError(std::string("QSRC: ") + e.what());
    }
  }
  try {
    return coding::MixedSource(std::move(weights), std::move(comps));
  } catch (const Error& e) {
    throw ParseError(std::string("QSRC: ") + e.what());
  }
}

void write_qsrc(std::ostream& out, const coding::MixedSource& src) {
  const auto& first = src.components.front();
  out << "QSRC " << first.num_signals() << " " << first.dim() << " "
      << src.components.size() << "\n";
  for (const auto& v : first.signals) {
    for (long j = 0; j < v.size(); ++j) {
      if (j) out << " ";
      char buf[80];
      std::snprintf(buf, sizeof(buf), "%.17g %.17g", v[j].real(), v[j].imag());
      out << buf;
    }
    out << "\n";
  }
  for (size_t c = 0; c < src.components.size(); ++c) {
    out << format_double(src.weights[c]);
    for (double p : src.components[c].probs) out << " " << format_double(p);
    out << "\n";
  }
}

coding::MixedSource load_qsrc(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_qsrc(in);
}

void save_qsrc(const std::string& path, const coding::MixedSource& src) {
  std::ofstream out = open_output(path);
  write_qsrc(out, src);
}

ProtocolFile read_qproto(std::istream& in) {
  expect_tag(in, "QPROTO");
  expect_tag(in, "v1");
  ProtocolFile pf;
  conv::RedistributionProtocol& p = pf.protocol;
  bool have_state = false, have_encoder = false, have_decoder = false;
  std::string tag;
  while (in >> tag) {
    if (tag == "kind") {
      pf.kind = read_tag(in, "kind value");
    } else if (tag == "n") {
      p.n = static_cast<int>(read_count(in, "n"));
    } else if (tag == "dims") {
      for (int i = 0; i < 4; ++i)
        p.dims[i] = static_cast<int>(read_count(in, "dims"));
    } else if (tag == "ent") {
      p.k = static_cast<int>(read_count(in, "k"));
      p.m = static_cast<int>(read_count(in, "m"));
    } else if (tag == "qdim") {
      p.q_dim = static_cast<int>(read_count(in, "qdim"));
    } else if (tag == "STATE") {
      Mat column = read_qmtx(in);
      if (column.cols() != 1) throw ParseError("QPROTO: state must be a column");
      mat::CVec v = column.col(0);
      double norm = v.norm();
      if (std::abs(norm - 1.0) > 1e-8)
        throw ParseError("QPROTO: state is not normalized");
      p.psi = v / norm;
      have_state = true;
    } else if (tag == "ENCODER") {
      p.encoder = read_qchn(in);
      have_encoder = true;
    } else if (tag == "DECODER") {
      p.decoder = read_qchn(in);
      have_decoder = true;
    } else {
      throw ParseError("QPROTO: unknown tag '" + tag + "'");
    }
  }
  if (pf.kind.empty() || !have_state || !have_encoder || !have_decoder)
    throw ParseError("QPROTO: incomplete descriptor");
  if (pf.kind != "redistribution" && pf.kind != "source_coding" &&
      pf.kind != "coherent_merging" && pf.kind != "state_splitting")
    throw ParseError("QPROTO: unsupported kind '" + pf.kind + "'");
  long expect = static_cast<long>(p.dims[0]) * p.dims[1] * p.dims[2] * p.dims[3];
  if (p.psi.size() != expect)
    throw ParseError("QPROTO: state size disagrees with dims");
  return pf;
}

ProtocolFile load_qproto(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_qproto(in);
}

void write_qproto(std::ostream& out, const ProtocolFile& pf) {
  const conv::RedistributionProtocol& p = pf.protocol;
  out << "QPROTO v1\n";
  out << "kind " << pf.kind << "\n";
  out << "n " << p.n << "\n";
  out << "dims " << p.dims[0] << " " << p.dims[1] << " " << p.dims[2] << " "
      << p.dims[3] << "\n";
  out << "ent " << p.k << " " << p.m << "\n";
  out << "qdim " << p.q_dim << "\n";
  out << "STATE\n";
  write_qmtx(out, Mat(p.psi));
  out << "ENCODER\n";
  write_qchn(out, p.encoder);
  out << "DECODER\n";
  write_qchn(out, p.decoder);
}

}  // namespace qdiv::io
