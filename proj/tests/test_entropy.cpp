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

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

#include "qdecay/entropy.hpp"
#include "qdecay/random.hpp"

namespace qdecay {
namespace {

const double kLn2 = std::numbers::ln2;

TEST(Entropy, MaximallyMixedAndPure) {
  for (std::size_t d : {2, 3, 7})
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(d)), std::log(d), 1e-13);
  CounterRng rng(1);
  EXPECT_NEAR(von_neumann_entropy(random_pure_density(4, rng)), 0.0, 1e-12);
}

TEST(RelativeEntropy, BasicQubitExample) {
  // D(|0><0| || I/2) = ln 2.
  const std::vector<double> p{1.0, 0.0};
  EXPECT_NEAR(relative_entropy(DensityMatrix::diagonal(p), DensityMatrix::maximally_mixed(2)).value,
              kLn2, 1e-14);
  EXPECT_TRUE(relative_entropy(DensityMatrix::maximally_mixed(2), DensityMatrix::diagonal(p))
                  .is_infinite());
}

// Oracle: Eigen's Schur-Parlett matrix logarithm.
TEST(RelativeEntropy, MatchesSchurParlettLogarithm) {
  CounterRng rng(2);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t d = 2 + static_cast<std::size_t>(rep % 3);
    const DensityMatrix rho = random_density_hs(d, rng);
    const DensityMatrix sigma = random_density_hs(d, rng);
    const ComplexMatrix lr = rho.matrix().log();
    const ComplexMatrix ls = sigma.matrix().log();
    const double ref = (rho.matrix() * (lr - ls)).trace().real();
    EXPECT_NEAR(relative_entropy(rho, sigma).value, ref, 1e-10);
  }
}

TEST(RelativeEntropy, NonNegativeAndZeroOnDiagonal) {
  CounterRng rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    const DensityMatrix rho = random_density_hs(3, rng);
    const DensityMatrix sigma = random_density_hs(3, rng);
    EXPECT_GE(relative_entropy(rho, sigma).value, -1e-14);
    EXPECT_NEAR(relative_entropy(rho, rho).value, 0.0, 1e-12);
  }
}

TEST(MutualInformation, BellAndProduct) {
  ComplexVector bell = ComplexVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(mutual_information(BipartiteDensity(2, 2, DensityMatrix::pure(bell))), 2.0 * kLn2,
              1e-12);
  CounterRng rng(4);
  const DensityMatrix a = random_density_hs(2, rng);
  const DensityMatrix b = random_density_hs(3, rng);
  EXPECT_NEAR(mutual_information(BipartiteDensity(2, 3, tensor(a, b))), 0.0, 1e-12);
}

// Property: I(A:B) = D(rho_AB || rho_A (x) rho_B).
TEST(MutualInformation, EqualsRelativeEntropyToProduct) {
  CounterRng rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    const BipartiteDensity ab(2, 2, random_density_hs(4, rng));
    const DensityMatrix prod =
        tensor(partial_trace(ab, Subsystem::A), partial_trace(ab, Subsystem::B));
    EXPECT_NEAR(mutual_information(ab), relative_entropy(ab.state(), prod).value, 1e-11);
  }
}

TEST(Scalars, BinaryEntropyAndEta) {
  EXPECT_NEAR(binary_entropy(0.5), kLn2, 1e-15);
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(eta(0.0), 0.0);
  EXPECT_NEAR(eta(0.25), 0.25 * std::log(4.0), 1e-15);
  EXPECT_THROW(binary_entropy(1.5), std::domain_error);
}

TEST(Scalars, EtaDifferenceMatchesDirectAndStaysAccurate) {
  EXPECT_NEAR(eta_difference(0.3, 0.1), eta(0.4) - eta(0.3), 1e-15);
  EXPECT_NEAR(eta_difference(0.3, -0.1), eta(0.2) - eta(0.3), 1e-15);
  // Tiny delta: first-order term -(1 + ln x) delta.
  const double x = 0.45;
  const double dl = 1e-30;
  EXPECT_NEAR(eta_difference(x, dl) / dl, -(1.0 + std::log(x)), 1e-12);
}

TEST(Scalars, KappaSeriesBranchIsContinuous) {
  EXPECT_NEAR(kappa(1.0), 0.5, 1e-15);
  const double below = kappa(1.0 + 0.99e-2);
  const double above = kappa(1.0 + 1.01e-2);
  EXPECT_NEAR(below, above, 1e-4);
  EXPECT_NEAR(kappa(4.0), (4.0 * std::log(4.0) - 3.0) / 9.0, 1e-15);
  EXPECT_THROW(kappa(0.5), std::domain_error);
}

TEST(Scalars, LogMeanWeight) {
  EXPECT_NEAR(log_mean_weight(0.2, 0.2), 5.0, 1e-15);
  EXPECT_NEAR(log_mean_weight(0.2, 0.6), std::log(3.0) / 0.4, 1e-14);
  EXPECT_NEAR(log_mean_weight(0.5, 0.5 + 1e-13), 2.0, 1e-9);
}

TEST(AlmostConcavity, FValues) {
  EXPECT_EQ(f_almost_concavity(0.0, 0.3), 0.0);
  // m = 1: f reduces to the binary entropy.
  EXPECT_NEAR(f_almost_concavity(0.2, 1.0), binary_entropy(0.2), 1e-15);
  EXPECT_THROW(f_almost_concavity(1.0, 0.5), std::domain_error);
  EXPECT_THROW(f_almost_concavity(0.1, 0.0), std::domain_error);
}

TEST(Pinsker, QubitDiagonal) {
  const std::vector<double> p{0.9, 0.1};
  const std::vector<double> q{0.5, 0.5};
  const PinskerReport r = pinsker_check(DensityMatrix::diagonal(p), DensityMatrix::diagonal(q));
  EXPECT_TRUE(r.commuting);
  EXPECT_NEAR(r.trace_distance, 0.8, 1e-14);
  EXPECT_NEAR(r.pinsker_bound, 0.32, 1e-14);
  EXPECT_NEAR(r.refined_bound, std::max(-std::log(1.0 - 0.16), 0.32), 1e-14);
  EXPECT_TRUE(r.pass());
}

// Oracle: ||X||^2 = int_0^inf tr[X (omega + r)^-1 X (omega + r)^-1] dr with
// Boost's exp-sinh rule on the half line.
TEST(WeightedNorm, MatchesResolventIntegral) {
  CounterRng rng(6);
  boost::math::quadrature::exp_sinh<double> integrator;
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t d = 2 + static_cast<std::size_t>(rep % 2);
    const DensityMatrix omega = random_density_hs(d, rng);
    const HermitianMatrix x = random_hermitian(d, rng);
    const ComplexMatrix id = ComplexMatrix::Identity(static_cast<Eigen::Index>(d),
                                                     static_cast<Eigen::Index>(d));
    auto f = [&](double r) {
      const ComplexMatrix inv = (omega.matrix() + r * id).inverse();
      return (x.matrix() * inv * x.matrix() * inv).trace().real();
    };
    const double ref = integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity());
    EXPECT_NEAR(weighted_norm_sq(x, omega).value, ref, 1e-9 * std::max(1.0, ref));
  }
}

TEST(WeightedNorm, InfiniteOutsideSupport) {
  const std::vector<double> q{1.0, 0.0};
  EXPECT_TRUE(weighted_norm_sq(HermitianMatrix(pauli_x()), DensityMatrix::diagonal(q)).is_infinite());
  EXPECT_FALSE(weighted_norm_sq(HermitianMatrix(pauli_z()), DensityMatrix::diagonal(
                   std::vector<double>{0.5, 0.5})).is_infinite());
}

// Oracle: Boost's tabulated 20-point Gauss-Legendre rule.
TEST(Quadrature, GaussLegendreMatchesBoostTable) {
  using Gauss20 = boost::math::quadrature::gauss<double, 20>;
  const QuadratureRule q = gauss_legendre_unit(20);
  const auto& x = Gauss20::abscissa();
  const auto& w = Gauss20::weights();
  // Boost stores the non-negative half, ascending from 0.
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double node = 0.5 * (1.0 + x[k]);
    bool found = false;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
      if (std::abs(q.nodes[i] - node) < 1e-14) {
        EXPECT_NEAR(q.weights[i], 0.5 * w[k], 1e-14);
        found = true;
      }
    }
    EXPECT_TRUE(found) << "node " << node;
  }
}

TEST(Quadrature, ExactOnHighDegreePolynomial) {
  const QuadratureRule q = gauss_legendre_unit(64);
  double s = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * std::pow(q.nodes[i], 120);
  EXPECT_NEAR(s, 1.0 / 121.0, 1e-15);
}

// Dual route: the graded Gauss-Legendre double integral against matrix
// logarithms, and against adaptive Gauss-Kronrod over the same integrand
// D = int_0^1 ds int_0^s dt ||rho - sigma||^2 at (1 - t) sigma + t rho.
TEST(IntegralForm, AgreesWithClosedFormAndAdaptiveQuadrature) {
  CounterRng rng(7);
  for (int rep = 0; rep < 6; ++rep) {
    const std::size_t d = 2 + static_cast<std::size_t>(rep % 2);
    const DensityMatrix rho = random_density_hs(d, rng);
    const DensityMatrix sigma = random_density_hs(d, rng);
    const double direct = relative_entropy(rho, sigma).value;
    const double graded = relative_entropy_integral_form(rho, sigma, 64);
    EXPECT_NEAR(graded, direct, 1e-8);

    const HermitianMatrix diff(ComplexMatrix(rho.matrix() - sigma.matrix()));
    auto f = [&](double t) {
      const ComplexMatrix w = (1.0 - t) * sigma.matrix() + t * rho.matrix();
      return weighted_norm_sq(diff, eigh(HermitianMatrix(w))).value;
    };
    // Swapping the order: int_0^1 (1 - t) f(t) dt.
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    const double adaptive = GK::integrate([&](double t) { return (1.0 - t) * f(t); }, 0.0, 1.0, 15,
                                          1e-12);
    EXPECT_NEAR(adaptive, direct, 1e-8);
  }
}

TEST(IntegralForm, RejectsUnsupportedPairs) {
  const std::vector<double> q{1.0, 0.0};
  EXPECT_THROW(relative_entropy_integral_form(DensityMatrix::maximally_mixed(2),
                                              DensityMatrix::diagonal(q)),
               std::domain_error);
}

TEST(Sandwich, HoldsOnRandomPairsAndReportsC) {
  CounterRng rng(8);
  for (int rep = 0; rep < 40; ++rep) {
    const DensityMatrix rho = random_density_hs(2, rng);
    const DensityMatrix sigma = random_density_hs(2, rng);
    const SandwichReport s = gaorouze_sandwich_check(rho, sigma);
    EXPECT_GE(s.c, 1.0);
    EXPECT_TRUE(s.pass) << s.lower_slack << " " << s.upper_slack;
  }
}

}  // namespace
}  // namespace qdecay
