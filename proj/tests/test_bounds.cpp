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

#include <cmath>

#include "qdecay/bounds.hpp"
#include "qdecay/random.hpp"

namespace qdecay {
namespace {

TEST(Params, ZetaAndEps) {
  EXPECT_NEAR(ConverseBoundParams::zeta_for(1e-3, 4.0, 0.75), -std::expm1(-3e-3), 1e-18);
  EXPECT_NEAR(ConverseBoundParams::eps_for(1e-3, 4.0, 0.75), -std::expm1(-1.5e-3), 1e-18);
  EXPECT_EQ(ConverseBoundParams::zeta_for(0.0, 4.0, 0.75), 0.0);
}

TEST(GFactor, ZeroZetaIsOne) {
  const GFactor g = g_factor(0.0, 4.0);
  EXPECT_EQ(g.g, 1.0);
  EXPECT_THROW(g_factor(1.0, 4.0), std::domain_error);
  EXPECT_THROW(g_factor(0.1, 0.5), std::domain_error);
}

// Oracle: the optimum is a stationary point of the objective in log tau.
TEST(GFactor, OptimumIsStationary) {
  for (GVariant v : {GVariant::kKappa, GVariant::kWorkedExample}) {
    for (double zeta : {1e-5, 3e-3, 0.03, 0.26, 0.95}) {
      const GFactor g = g_factor(zeta, 4.0, v);
      const double h = 1e-4;
      const double up = g_objective(g.tau_star * std::exp(h), zeta, 4.0, v);
      const double dn = g_objective(g.tau_star * std::exp(-h), zeta, 4.0, v);
      EXPECT_NEAR((up - dn) / (2.0 * h), 0.0, 1e-6 * std::max(g.g, 1e-6)) << zeta;
      EXPECT_GE(g.g, up - 1e-15);
      EXPECT_GE(g.g, dn - 1e-15);
      EXPECT_NEAR(g.g, g_objective(g.tau_star, zeta, 4.0, v), 1e-15);
    }
  }
}

TEST(GFactor, StableUnderGridDoubling) {
  for (double zeta : {1e-4, 0.01, 0.5}) {
    const GFactor a = g_factor(zeta, 4.0, GVariant::kKappa, 2000);
    const GFactor b = g_factor(zeta, 4.0, GVariant::kKappa, 4000);
    EXPECT_NEAR(a.g, b.g, 1e-6 * a.g);
  }
}

// Property: g is non-increasing in zeta and lies in (0, 1].
TEST(GFactor, MonotoneInZeta) {
  double prev = 1.0;
  for (double zeta = 1e-4; zeta < 0.99; zeta *= 1.7) {
    const double g = g_factor(zeta, 4.0).g;
    EXPECT_LE(g, prev + 1e-12);
    EXPECT_GT(g, 0.0);
    prev = g;
  }
}

TEST(GFactor, VariantsDiffer) {
  const double z = ConverseBoundParams::zeta_for(1e-3, 4.0, 0.75);
  EXPECT_GT(g_factor(z, 4.0, GVariant::kWorkedExample).g, g_factor(z, 4.0, GVariant::kKappa).g);
  EXPECT_NEAR(replacement_converse_factor(z, 4.0, std::nullopt), g_factor(z, 4.0).g, 1e-15);
  EXPECT_NEAR(replacement_converse_factor(z, 4.0, 0.05),
              g_objective(0.05, z, 4.0, GVariant::kKappa), 1e-15);
}

TEST(Clsi, HoldsAtSampleStates) {
  CounterRng rng(3);
  const Lindbladian l = depolarizing_lindbladian(2, 0.75);
  for (int rep = 0; rep < 20; ++rep) {
    const DensityMatrix rho = random_density_hs(2, rng);
    for (double t : {1e-3, 0.1, 1.0}) {
      const BoundReport r = clsi_converse_check(l, rho, t);
      EXPECT_TRUE(r.pass) << r.slack();
      EXPECT_NEAR(r.params.c, 4.0, 1e-9);
      ASSERT_TRUE(r.optimizer.has_value());
    }
  }
}

TEST(Clsi, FixedPointInputIsTrivial) {
  const Lindbladian l = depolarizing_lindbladian(2, 0.75);
  const BoundReport r = clsi_converse_check(l, DensityMatrix::maximally_mixed(2), 0.1);
  EXPECT_NEAR(r.lhs, 0.0, 1e-14);
  EXPECT_NEAR(r.rhs, 0.0, 1e-14);
  EXPECT_TRUE(r.pass);
}

TEST(Classical, FeasibilityAndBranches) {
  EXPECT_GT(classical_a_min(0.1, 0.1), 1.0);
  EXPECT_LT(classical_a_min(1e-4, 0.5), 1.0);
  EXPECT_FALSE(classical_feasible(1e-4, 0.5, classical_a_min(1e-4, 0.5) * 0.5));
  ConverseBoundParams p;
  p.eps = 1e-4;
  p.m_tilde = 0.5;
  p.g_tilde = 2.0;
  EXPECT_THROW(classical_converse_factor(p, ClassicalBranch::kLargeD), std::domain_error);
  p.a = 0.5;
  const double large = classical_converse_factor(p, ClassicalBranch::kLargeD);
  const double small = classical_converse_factor(p, ClassicalBranch::kSmallD);
  EXPECT_GT(large, 0.0);
  EXPECT_LT(large, 1.0);
  EXPECT_NEAR(small, 0.5 * (1 - 1e-4) * (1 - 1e-4) / ((1 - 1e-4) * 0.5 + 2e-4), 1e-15);
}

TEST(Classical, RejectsPreconditionFailures) {
  const ConditionalExpectation e = depolarizing_projection(2);
  const Lindbladian l = replacement_lindbladian(e, 1e-3);
  ConverseBoundParams p;
  p.t = 0.01;
  p.c = l.pp_index();
  p.diamond = l.diamond_norm_upper();
  const std::vector<double> a{0.6, 0.4};
  const std::vector<double> b{0.45, 0.55};
  EXPECT_NO_THROW(classical_converse_check(e, DensityMatrix::diagonal(a), DensityMatrix::diagonal(b), p));
  // Non-commuting pair.
  ComplexVector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const DensityMatrix off = mix(DensityMatrix::maximally_mixed(2), DensityMatrix::pure(plus), 0.2);
  EXPECT_THROW(classical_converse_check(e, off, DensityMatrix::diagonal(b), p), std::invalid_argument);
  // Mismatched E images.
  const ConditionalExpectation pz = pinching(ComplexMatrix::Identity(2, 2));
  EXPECT_THROW(classical_converse_check(pz, DensityMatrix::diagonal(a), DensityMatrix::diagonal(b), p),
               std::invalid_argument);
}

TEST(MutualInfo, ProductInputGivesZeroBound) {
  const Lindbladian l = replacement_lindbladian(depolarizing_projection(2), 1e-3);
  const std::vector<double> pa{0.6, 0.4};
  const std::vector<double> pb{0.3, 0.7};
  const DensityMatrix prod = tensor(DensityMatrix::diagonal(pa), DensityMatrix::diagonal(pb));
  const BoundReport r = mutual_info_converse_check(l, BipartiteDensity(2, 2, prod), 0.01);
  EXPECT_NEAR(r.lhs, 0.0, 1e-13);
  EXPECT_TRUE(r.pass);
}

TEST(DecayedState, ZeroZetaFactorAndValidation) {
  CounterRng rng(5);
  const DensityMatrix rho = random_density_hs(2, rng);
  const DensityMatrix sigma = random_density_hs(2, rng);
  const DensityMatrix mm = DensityMatrix::maximally_mixed(2);
  const BoundReport r = decayed_state_bound_check(rho, sigma, mm, mm, 0.3, 0.0, 1.0);
  EXPECT_EQ(r.factor, 0.0);
  EXPECT_TRUE(r.pass);
  EXPECT_THROW(decayed_state_bound_check(rho, sigma, mm, mm, 0.2, 0.3, 1.0), std::domain_error);
  const std::vector<double> pure{1.0, 0.0};
  // theta = |0><0| is not below 1 * I/2.
  EXPECT_THROW(decayed_state_bound_check(rho, sigma, DensityMatrix::diagonal(pure), mm, 0.3, 0.1, 1.0),
               std::domain_error);
}

TEST(OrigCompare, HoldsWithExactZeta) {
  CounterRng rng(6);
  for (int rep = 0; rep < 20; ++rep) {
    const DensityMatrix rho = random_density_hs(2, rng);
    const DensityMatrix sigma = random_density_hs(2, rng);
    const double g = loewner_min_coefficient(sigma, rho).value;
    const double zeta = std::max(0.0, 1.0 - 1.0 / g) * (1.0 + 1e-12);
    const BoundReport r = origcompare_check(rho, sigma, random_density_hs(2, rng), 0.2, zeta);
    EXPECT_TRUE(r.pass) << r.slack();
  }
}

TEST(Json, InfiniteBecomesNull) {
  BoundReport r;
  r.bound = "x";
  r.lhs = std::numeric_limits<double>::infinity();
  r.lhs_infinite = true;
  const nlohmann::json j = to_json(r);
  EXPECT_TRUE(j["lhs"].is_null());
  EXPECT_EQ(j["bound"], "x");
}

}  // namespace
}  // namespace qdecay
