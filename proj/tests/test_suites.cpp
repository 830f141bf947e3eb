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

#include <gtest/gtest.h>

#include "qdecay/suites.hpp"

namespace qdecay {
namespace {

class EverySuite : public ::testing::TestWithParam<std::string> {};

TEST_P(EverySuite, PassesOnSmallSample) {
  const SuiteResult r = run_suite(GetParam(), 40, 12345);
  EXPECT_TRUE(r.pass()) << r.to_json().dump(2);
  EXPECT_GT(r.checks, 0u);
}

INSTANTIATE_TEST_SUITE_P(All, EverySuite, ::testing::ValuesIn(suite_names()),
                         [](const auto& info) {
                           std::string n = info.param;
                           for (char& c : n)
                             if (c == '-') c = '_';
                           return n;
                         });

TEST(Suites, SameSeedSameReport) {
  EXPECT_EQ(run_verify("pinsker", 50, 3).dump(), run_verify("pinsker", 50, 3).dump());
  EXPECT_NE(run_verify("pinsker", 50, 3).dump(), run_verify("pinsker", 50, 4).dump());
}

// A sample depends only on (seed, suite, index), not on the sample count.
TEST(Suites, SamplesArePrefixStable) {
  const SuiteResult a = run_suite("normcomp", 10, 9);
  const SuiteResult b = run_suite("normcomp", 20, 9);
  EXPECT_LE(b.worst_slack, a.worst_slack);
  EXPECT_EQ(run_suite("normcomp", 10, 9).worst_slack, a.worst_slack);
}

TEST(Suites, UnknownNameThrows) {
  EXPECT_THROW(run_suite("nope", 1, 0), std::invalid_argument);
}

TEST(Suites, ReportShape) {
  const nlohmann::json j = run_verify("all", 2, 1);
  EXPECT_EQ(j["suites"].size(), suite_names().size());
  EXPECT_EQ(j["seed"], 1);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["totalViolations"], 0);
}

}  // namespace
}  // namespace qdecay
