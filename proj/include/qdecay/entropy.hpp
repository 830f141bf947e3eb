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

#ifndef QDECAY_ENTROPY_HPP_
#define QDECAY_ENTROPY_HPP_

#include <cstddef>
#include <vector>

#include "qdecay/matcore.hpp"

namespace qdecay {

// All entropies are in nats.
using EntropyValue = ExtendedReal;

double von_neumann_entropy(const DensityMatrix& rho);
EntropyValue relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);
double mutual_information(const BipartiteDensity& rho);

double binary_entropy(double p);
// -x ln x with 0 ln 0 = 0.
double eta(double x);
// eta(x + delta) - eta(x), accurate when |delta| << x.
double eta_difference(double x, double delta);

// (c ln c - c + 1) / (c - 1)^2; kappa(1) = 1/2.
double kappa(double c);

// Logarithmic mean weight (ln a - ln b)/(a - b), 1/a on the diagonal.
double log_mean_weight(double a, double b);

struct PinskerReport {
  double relative_entropy = 0.0;
  double trace_distance = 0.0;  // ||rho - sigma||_1
  double pinsker_bound = 0.0;   // ||.||_1^2 / 2
  bool commuting = false;
  double refined_bound = 0.0;   // max(-ln(1 - ||.||_1^2/4), pinsker); commuting only
  bool pinsker_pass = true;
  bool refined_pass = true;
  bool pass() const { return pinsker_pass && refined_pass; }
};

inline constexpr double kPinskerSlack = 1e-12;

PinskerReport pinsker_check(const DensityMatrix& rho, const DensityMatrix& sigma);

// h(eps) + eps ln(eps + (1-eps)/m) + (1-eps) ln(1 - eps + eps/m).
double f_almost_concavity(double eps, double m_tilde);

// sum_ij |X~_ij|^2 Lambda(l_i, l_j) in the eigenbasis of omega. Infinite when
// X has weight outside supp(omega). omega only needs to be PSD.
EntropyValue weighted_norm_sq(const HermitianMatrix& x, const EigenDecomposition& omega);
EntropyValue weighted_norm_sq(const HermitianMatrix& x, const DensityMatrix& omega);

// Gauss-Legendre nodes and weights on [0, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_legendre_unit(std::size_t n);

// Double integral over 0 <= t <= s <= 1 by tensor Gauss-Legendre with t = s u
// and quintic endpoint grading on both coordinates. Throws std::domain_error
// if ker sigma is not inside ker rho, std::invalid_argument if quad_points < 8.
double relative_entropy_integral_form(const DensityMatrix& rho,
                                      const DensityMatrix& sigma,
                                      std::size_t quad_points = 64);

struct SandwichReport {
  double c = 1.0;
  double kappa = 0.5;
  double weighted_norm = 0.0;  // ||rho - sigma||^2_{sigma^-1}
  double relative_entropy = 0.0;
  double lower_slack = 0.0;    // D - kappa * norm
  double upper_slack = 0.0;    // norm - D
  bool pass = true;
};

inline constexpr double kBoundSlack = 1e-10;

// Throws std::domain_error for incomparable pairs (infinite Loewner coefficient).
SandwichReport gaorouze_sandwich_check(const DensityMatrix& rho,
                                       const DensityMatrix& sigma);

}  // namespace qdecay

#endif  // QDECAY_ENTROPY_HPP_
