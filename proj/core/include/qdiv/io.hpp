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

#ifndef QDIV_IO_HPP
#define QDIV_IO_HPP

#include <iosfwd>
#include <string>

#include "qdiv/coding.hpp"
#include "qdiv/converse.hpp"
#include "qdiv/matcore.hpp"
#include "qdiv/quantum.hpp"

namespace qdiv::io {

using mat::Mat;

// QMTX: line 1 "QMTX <rows> <cols>", then rows*cols whitespace-separated
// complex entries "re imag", row-major, >= 15 significant digits on write.
// Readers reject NaN/Inf.
Mat read_qmtx(std::istream& in);
void write_qmtx(std::ostream& out, const Mat& m);
Mat load_qmtx(const std::string& path);
void save_qmtx(const std::string& path, const Mat& m);

// QCHN: line 1 "QCHN <n_kraus> <out_dim> <in_dim>", then n_kraus QMTX
// records. Trace preservation is validated within 1e-8 on load.
quantum::QuantumChannel read_qchn(std::istream& in);
void write_qchn(std::ostream& out, const quantum::QuantumChannel& ch);
quantum::QuantumChannel load_qchn(const std::string& path);
void save_qchn(const std::string& path, const quantum::QuantumChannel& ch);

// QSRC: line 1 "QSRC <m> <d> <k>", then m pure-state rows of 2d reals, then
// k component rows "t_j p_j1 ... p_jm".
coding::MixedSource read_qsrc(std::istream& in);
void write_qsrc(std::ostream& out, const coding::MixedSource& src);
coding::MixedSource load_qsrc(const std::string& path);
void save_qsrc(const std::string& path, const coding::MixedSource& src);

// QPROTO v1: protocol descriptor of the redistribution family.
//   QPROTO v1
//   kind <redistribution|source_coding|coherent_merging|state_splitting>
//   n <copies>
//   dims <dA> <dB> <dC> <dR>
//   ent <k> <m>
//   qdim <|Q^n|>
//   STATE  + a QMTX record holding the purified state as a column
//   ENCODER + a QCHN record
//   DECODER + a QCHN record
struct ProtocolFile {
  std::string kind;
  conv::RedistributionProtocol protocol;
};
ProtocolFile read_qproto(std::istream& in);
ProtocolFile load_qproto(const std::string& path);
void write_qproto(std::ostream& out, const ProtocolFile& pf);

std::string format_double(double x);  // 15 significant digits, inf markers

}  // namespace qdiv::io

#endif
