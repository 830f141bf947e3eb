// Copyright 2026 The qdecay Authors
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

#ifndef QDECAY_SUITES_HPP_
#define QDECAY_SUITES_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace qdecay {

// Randomized inequality suites. Sample i of suite `name` draws from
// CounterRng(derive_seed(seed, stream_id(name), i)), so any failure can be
// replayed from (seed, name, i) alone.

struct SuiteFailure {
  std::uint64_t counter = 0;
  std::string check;
  double slack = 0.0;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  std::size_t samples = 0;
  std::size_t checks = 0;
  std::size_t violations = 0;
  std::size_t rejected = 0;  // infeasible draws that were redrawn
  double worst_slack = 0.0;
  std::vector<SuiteFailure> failures;  // first few only

  bool pass() const { return violations == 0; }
  nlohmann::json to_json() const;
};

const std::vector<std::string>& suite_names();

// Throws std::invalid_argument for an unknown suite.
SuiteResult run_suite(const std::string& name, std::size_t samples, std::uint64_t seed);

// `selector` is a suite name or "all". The report has no timings, so equal
// arguments give byte-identical dumps.
nlohmann::json run_verify(const std::string& selector, std::size_t samples, std::uint64_t seed);

}  // namespace qdecay

#endif  // QDECAY_SUITES_HPP_
