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

#ifndef QDIV_SUITES_HPP
#define QDIV_SUITES_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qdiv::suites {

// A suite reports one margin per trial, normalized so that the trial passes
// iff margin <= 1 (after the QDIV_TOL_SCALE debugging multiplier). Each
// check inside a trial contributes violation/check_tolerance; the margin is
// the worst such ratio.
struct SuiteSpec {
  std::string name;
  long default_trials = 100;
  std::function<double(std::uint64_t trial_seed, long index)> margin;
};

const std::vector<SuiteSpec>& registry();
const SuiteSpec* find(const std::string& name);

struct SuiteRun {
  std::string name;
  std::vector<double> margins;
  double worst = 0.0;
  double tolerance = 1.0;
  bool pass = true;
};

SuiteRun run_suite(const SuiteSpec& spec, std::uint64_t seed, long trials,
                   int jobs);

double tolerance_scale();  // QDIV_TOL_SCALE, default 1

}  // namespace qdiv::suites

#endif
