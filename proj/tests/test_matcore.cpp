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

#include <Eigen/Eigenvalues>
#include <cmath>
#include <vector>

#include "qdecay/matcore.hpp"
#include "qdecay/random.hpp"

namespace qdecay {
namespace {

// Oracle: Eigen's Householder tridiagonalization + QR.
TEST(Eigh, MatchesEigenSelfAdjointSolver) {
  CounterRng rng(11);
  for (std::size_t d : {1, 2, 3, 5, 8, 16}) {
    for (int rep = 0; rep < 5; ++rep) {
      const HermitianMatrix h = random_hermitian(d, rng);
      const EigenDecomposition e = eigh(h);
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> ref(h.matrix());
      ASSERT_EQ(ref.info(), Eigen::Success);
      const double scale = std::max(1.0, h.matrix().norm());
      for (Eigen::Index i = 0; i < e.eigenvalues.size(); ++i)
        EXPECT_NEAR(e.eigenvalues(i), ref.eigenvalues()(i), 1e-12 * scale) << "d=" << d;
      const ComplexMatrix rebuilt =
          e.eigenvectors * e.eigenvalues.cast<Complex>().asDiagonal() * e.eigenvectors.adjoint();
      EXPECT_LT((rebuilt - h.matrix()).norm(), 1e-12 * scale);
      const ComplexMatrix id = ComplexMatrix::Identity(static_cast<Eigen::Index>(d),
                                                       static_cast<Eigen::Index>(d));
      EXPECT_LT((e.eigenvectors.adjoint() * e.eigenvectors - id).norm(), 1e-12);
    }
  }
}

TEST(Eigh, AscendingAndDegenerate) {
  const HermitianMatrix h(ComplexMatrix(ComplexMatrix::Identity(4, 4) * 2.0));
  const EigenDecomposition e = eigh(h);
  for (Eigen::Index i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(e.eigenvalues(i), 2.0);
  const HermitianMatrix z(pauli_z());
  EXPECT_DOUBLE_EQ(eigh(z).eigenvalues(0), -1.0);
  EXPECT_DOUBLE_EQ(eigh(z).eigenvalues(1), 1.0);
}

TEST(HermitianMatrix, RejectsNonHermitianAndNonSquare) {
  ComplexMatrix m = pauli_x();
  m(0, 1) = Complex(1.0, 0.5);
  EXPECT_THROW(HermitianMatrix{m}, std::invalid_argument);
  EXPECT_THROW(HermitianMatrix{ComplexMatrix(2, 3)}, std::invalid_argument);
  EXPECT_NO_THROW(HermitianMatrix{pauli_y()});
}

TEST(DensityMatrix, ValidatesTraceAndPositivity) {
  EXPECT_THROW(DensityMatrix{ComplexMatrix(ComplexMatrix::Identity(2, 2))}, std::invalid_argument);
  ComplexMatrix neg(2, 2);
  neg << 1.1, 0.0, 0.0, -0.1;
  EXPECT_THROW(DensityMatrix{neg}, std::invalid_argument);
  ComplexMatrix tiny(2, 2);
  tiny << 1.0 + 5e-11, 0.0, 0.0, -5e-11;
  const DensityMatrix rho(tiny);
  EXPECT_GE(rho.spectrum().eigenvalues(0), 0.0);
  EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-15);
}

TEST(DensityMatrix, FactoryStates) {
  const DensityMatrix mm = DensityMatrix::maximally_mixed(3);
  EXPECT_NEAR(mm.matrix()(1, 1).real(), 1.0 / 3.0, 1e-15);
  ComplexVector psi(2);
  psi << 1.0, Complex(0.0, 1.0);
  const DensityMatrix p = DensityMatrix::pure(psi);
  EXPECT_NEAR(p.matrix()(0, 1).real(), 0.0, 1e-15);
  EXPECT_NEAR(p.matrix()(0, 1).imag(), -0.5, 1e-15);
  EXPECT_EQ(p.spectrum().support_rank(), 1u);
}

TEST(PartialTrace, RecoversTensorFactors) {
  CounterRng rng(3);
  const DensityMatrix a = random_density_hs(2, rng);
  const DensityMatrix b = random_density_hs(3, rng);
  const BipartiteDensity ab(2, 3, tensor(a, b));
  EXPECT_LT((partial_trace(ab, Subsystem::A).matrix() - a.matrix()).norm(), 1e-14);
  EXPECT_LT((partial_trace(ab, Subsystem::B).matrix() - b.matrix()).norm(), 1e-14);
}

TEST(PartialTrace, BellStateMarginalIsMaximallyMixed) {
  ComplexVector bell = ComplexVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const BipartiteDensity ab(2, 2, DensityMatrix::pure(bell));
  EXPECT_LT((partial_trace(ab, Subsystem::A).matrix() - ComplexMatrix::Identity(2, 2) * 0.5).norm(),
            1e-15);
}

TEST(Norms, PauliValues) {
  EXPECT_NEAR(trace_norm(HermitianMatrix(pauli_x())), 2.0, 1e-14);
  EXPECT_NEAR(operator_norm(HermitianMatrix(pauli_y())), 1.0, 1e-14);
  EXPECT_NEAR(min_eigenvalue(HermitianMatrix(pauli_z())), -1.0, 1e-14);
  EXPECT_TRUE(commutes(pauli_z(), pauli_z(), 1e-12));
  EXPECT_FALSE(commutes(pauli_z(), pauli_x(), 1e-12));
}

TEST(MatrixFunction, SquareRootSquared) {
  CounterRng rng(9);
  const DensityMatrix rho = random_density_hs(4, rng);
  const HermitianMatrix s = matrix_function(rho.hermitian(), [](double x) { return std::sqrt(x); });
  EXPECT_LT((s.matrix() * s.matrix() - rho.matrix()).norm(), 1e-13);
}

TEST(Loewner, CommutingCaseIsMaxRatio) {
  const std::vector<double> p{0.5, 0.3, 0.2};
  const std::vector<double> q{0.2, 0.2, 0.6};
  const ExtendedReal c = loewner_min_coefficient(DensityMatrix::diagonal(p), DensityMatrix::diagonal(q));
  ASSERT_TRUE(c.finite);
  EXPECT_NEAR(c.value, 2.5, 1e-12);
}

TEST(Loewner, SupportModes) {
  const std::vector<double> p{0.5, 0.5};
  const std::vector<double> q{1.0, 0.0};
  const DensityMatrix rho = DensityMatrix::diagonal(p);
  const DensityMatrix sigma = DensityMatrix::diagonal(q);
  EXPECT_TRUE(loewner_min_coefficient(rho, sigma).is_infinite());
  const ExtendedReal proj = loewner_min_coefficient(rho, sigma, SupportMode::kProjected);
  ASSERT_TRUE(proj.finite);
  EXPECT_NEAR(proj.value, 0.5, 1e-12);
}

// Property: rho <= c sigma holds at the returned c, and fails slightly below.
TEST(Loewner, TightOnRandomPairs) {
  CounterRng rng(21);
  for (int rep = 0; rep < 50; ++rep) {
    const DensityMatrix rho = random_density_hs(3, rng);
    const DensityMatrix sigma = random_density_hs(3, rng);
    const double c = loewner_min_coefficient(rho, sigma).value;
    const HermitianMatrix at(ComplexMatrix(c * sigma.matrix() - rho.matrix()));
    EXPECT_GT(min_eigenvalue(at), -1e-10 * c);
    const HermitianMatrix below(ComplexMatrix(0.999 * c * sigma.matrix() - rho.matrix()));
    EXPECT_LT(min_eigenvalue(below), 0.0);
  }
}

}  // namespace
}  // namespace qdecay
