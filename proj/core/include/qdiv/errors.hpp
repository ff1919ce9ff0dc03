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

#ifndef QDIV_ERRORS_HPP
#define QDIV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qdiv {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define QDIV_DEFINE_ERROR(NAME)                                  \
  struct NAME : Error {                                          \
    explicit NAME(const std::string& msg) : Error(msg) {}        \
  }

QDIV_DEFINE_ERROR(NonHermitianError);
QDIV_DEFINE_ERROR(NoConvergenceError);
QDIV_DEFINE_ERROR(DimMismatchError);
QDIV_DEFINE_ERROR(DomainError);
QDIV_DEFINE_ERROR(BadRankError);
QDIV_DEFINE_ERROR(BadParamsError);
QDIV_DEFINE_ERROR(SingularSigmaError);
QDIV_DEFINE_ERROR(SupportViolationError);
QDIV_DEFINE_ERROR(GridExhaustedError);
QDIV_DEFINE_ERROR(DegenerateVarianceError);
QDIV_DEFINE_ERROR(DegenerateEpsilonError);
QDIV_DEFINE_ERROR(BudgetExceededError);
QDIV_DEFINE_ERROR(BudgetViolationError);
QDIV_DEFINE_ERROR(IntractableError);
QDIV_DEFINE_ERROR(SingularMarginalError);
QDIV_DEFINE_ERROR(PreconditionViolationError);
QDIV_DEFINE_ERROR(ParseError);

#undef QDIV_DEFINE_ERROR

}  // namespace qdiv

#endif
