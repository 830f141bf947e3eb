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

#ifndef QDECAY_MATCORE_HPP_
#define QDECAY_MATCORE_HPP_

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>

#include <Eigen/Dense>

namespace qdecay {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Tolerances shared across modules.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kDensityTol = 1e-10;
inline constexpr double kSupportRelTol = 1e-12;
inline constexpr double kJacobiRelTol = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;

// A real number that may be +infinity. The flag is authoritative.
struct ExtendedReal {
  double value = 0.0;
  bool finite = true;

  static ExtendedReal of(double v) { return {v, true}; }
  static ExtendedReal infinite() {
    return {std::numeric_limits<double>::infinity(), false};
  }
  bool is_infinite() const { return !finite; }
};

class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  // Throws std::invalid_argument if m is not square or not Hermitian within
  // 1e-10 * max(1, max|m_ij|). Stores (m + m^dagger)/2.
  explicit HermitianMatrix(const ComplexMatrix& m);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }

  static HermitianMatrix zero(std::size_t d);
  static HermitianMatrix identity(std::size_t d);

 private:
  ComplexMatrix m_;
};

struct EigenDecomposition {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // columns

  // Number of eigenvalues above kSupportRelTol * max(0, lambda_max).
  std::size_t support_rank() const;
  // Threshold below which an eigenvalue is treated as zero.
  double support_threshold() const;
};

// Cyclic complex Jacobi. Throws std::runtime_error on non-convergence.
EigenDecomposition eigh(const HermitianMatrix& h);

class DensityMatrix {
 public:
  DensityMatrix() = default;
  // Validates PSD within 1e-10 and unit trace within 1e-10. Small negative
  // eigenvalues are clamped and the trace renormalized.
  explicit DensityMatrix(const ComplexMatrix& m);
  explicit DensityMatrix(const HermitianMatrix& h);

  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix maximally_mixed(std::size_t d);
  static DensityMatrix diagonal(std::span<const double> probs);

  std::size_t dim() const { return h_.dim(); }
  const ComplexMatrix& matrix() const { return h_.matrix(); }
  const HermitianMatrix& hermitian() const { return h_; }
  const EigenDecomposition& spectrum() const { return spec_; }

 private:
  HermitianMatrix h_;
  EigenDecomposition spec_;
};

enum class Subsystem { A, B };

class BipartiteDensity {
 public:
  BipartiteDensity(std::size_t dim_a, std::size_t dim_b, DensityMatrix state);

  std::size_t dim_a() const { return dim_a_; }
  std::size_t dim_b() const { return dim_b_; }
  const DensityMatrix& state() const { return state_; }

 private:
  std::size_t dim_a_;
  std::size_t dim_b_;
  DensityMatrix state_;
};

// V f(diag) V^dagger. Throws std::domain_error naming the eigenvalue where f
// is not finite.
HermitianMatrix matrix_function(const HermitianMatrix& h,
                                const std::function<double(double)>& f);
HermitianMatrix matrix_function(const EigenDecomposition& e,
                                const std::function<double(double)>& f);

// Applies f on the support of a PSD decomposition and 0 on the kernel.
HermitianMatrix support_function(const EigenDecomposition& e,
                                 const std::function<double(double)>& f);

ComplexMatrix support_projector(const EigenDecomposition& e);

// Kronecker product, A is the left (major) factor.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_a,
                            std::size_t dim_b, Subsystem keep);
DensityMatrix partial_trace(const BipartiteDensity& rho, Subsystem keep);

double trace_norm(const HermitianMatrix& m);
double operator_norm(const HermitianMatrix& m);
double min_eigenvalue(const HermitianMatrix& m);
double max_abs_entry(const ComplexMatrix& m);
bool commutes(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

enum class SupportMode {
  kStrict,    // infinite if rho has weight outside supp(sigma)
  kProjected  // compare against P_sigma rho P_sigma
};

// Smallest g with g sigma - P rho P >= 0, P the support projector of sigma.
// Both arguments must be PSD.
ExtendedReal loewner_min_coefficient(const HermitianMatrix& rho,
                                     const HermitianMatrix& sigma,
                                     SupportMode mode = SupportMode::kStrict);
ExtendedReal loewner_min_coefficient(const DensityMatrix& rho,
                                     const DensityMatrix& sigma,
                                     SupportMode mode = SupportMode::kStrict);

// eps = ||(rho - sigma) restricted to supp(sigma)||_inf for commuting inputs.
// Throws std::invalid_argument if [rho, sigma] != 0 within 1e-10, and
// std::logic_error if the floor rho - sigma + eps P_sigma >= -1e-12 fails.
double commuting_order_floor(const DensityMatrix& rho,
                             const DensityMatrix& sigma);

// Elementary operators.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix ket_bra(std::size_t d, std::size_t i, std::size_t j);

}  // namespace qdecay

#endif  // QDECAY_MATCORE_HPP_
