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

#ifndef QDECAY_BOUNDS_HPP_
#define QDECAY_BOUNDS_HPP_

#include <map>
#include <optional>
#include <string>

#include "json.hpp"
#include "qdecay/channels.hpp"
#include "qdecay/entropy.hpp"

namespace qdecay {

struct ConverseBoundParams {
  double t = 0.0;
  double c = 1.0;
  double diamond = 2.0;
  double zeta = 0.0;
  double eps = 0.0;
  std::optional<double> a;
  double m_tilde = 1.0;
  double g_tilde = 0.0;
  std::optional<double> tau;  // empty: optimize

  // 1 - exp(-t c diamond).
  static double zeta_for(double t, double c, double diamond);
  // Weight on E after the replacement: 1 - exp(-t c diamond / 2).
  static double eps_for(double t, double c, double diamond);
};

enum class GVariant { kKappa, kWorkedExample };

struct GFactor {
  double g = 1.0;
  double tau_star = 0.0;
};

// (1 - zeta)^2 tau / (tau + zeta) * (1 - tau (1 - ln tau) / kappa(c)).
// The worked-example variant replaces 1/kappa(c) by 9 / (9 ln 9 - 8) and
// ignores c.
double g_objective(double tau, double zeta, double c, GVariant variant);

// Supremum over tau in (0, 1): log grid of 2000 points on
// [min(1e-4, 1e-3 zeta), 1 - 1e-4], then golden section in log tau.
// `grid_points` is exposed for the stability test.
GFactor g_factor(double zeta, double c, GVariant variant = GVariant::kKappa,
                 std::size_t grid_points = 2000);

// With tau given, the objective at tau; otherwise the optimized g.
double replacement_converse_factor(double zeta, double c, std::optional<double> tau);

enum class ClassicalBranch { kLargeD, kSmallD };

// 2 f(eps) / ((1 - eps) m^2); the triple is feasible iff a > a_min.
double classical_a_min(double eps, double m_tilde);
bool classical_feasible(double eps, double m_tilde, double a);

// Large D: 1 - eps - 2 f(eps) / (a m^2).
// Small D: (1 - a)(1 - eps)^2 / ((1 - eps)(1 - a) + eps g).
// Throws std::domain_error on an infeasible triple or missing a.
double classical_converse_factor(const ConverseBoundParams& p, ClassicalBranch branch);

struct BoundReport {
  std::string bound;
  double lhs = 0.0;
  double rhs = 0.0;
  double factor = 0.0;
  bool lhs_infinite = false;
  ConverseBoundParams params;
  std::optional<GFactor> optimizer;
  std::map<std::string, double> extras;
  bool pass = true;

  double slack() const { return lhs_infinite ? 0.0 : lhs - rhs; }
};

nlohmann::json to_json(const BoundReport& r);

// D(Phi^t rho || E rho) >= g(1 - e^{-t c ||L||}, c) D(rho || E rho).
BoundReport clsi_converse_check(const Lindbladian& l, const DensityMatrix& rho, double t,
                                GVariant variant = GVariant::kKappa);
// Same with a precomputed propagator exp(-t L).
BoundReport clsi_converse_check(const Lindbladian& l, const SuperOperator& propagator,
                                const DensityMatrix& rho, double t,
                                GVariant variant = GVariant::kKappa);

// Replacement semigroup at weight eps = eps_for(t, c, diamond) applied to
// both arguments. params supplies t, c, diamond and optionally a; m_tilde,
// g_tilde and eps are computed. Preconditions are checked one by one.
BoundReport classical_converse_check(const ConditionalExpectation& e, const DensityMatrix& rho,
                                     const DensityMatrix& sigma, const ConverseBoundParams& params);

// L acts on B. rho must be diagonal in the product basis.
BoundReport mutual_info_converse_check(const Lindbladian& l_on_b, const BipartiteDensity& rho,
                                       double t, std::optional<double> a = std::nullopt);

BoundReport decayed_state_bound_check(const DensityMatrix& rho, const DensityMatrix& sigma,
                                      const DensityMatrix& theta, const DensityMatrix& omega,
                                      double eps, double zeta, double c);

BoundReport origcompare_check(const DensityMatrix& rho, const DensityMatrix& sigma,
                              const DensityMatrix& omega, double eps, double zeta);

// (1 - eps) x + eps y.
DensityMatrix mix(const DensityMatrix& x, const DensityMatrix& y, double eps);

}  // namespace qdecay

#endif  // QDECAY_BOUNDS_HPP_
