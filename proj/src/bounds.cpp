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

#include "qdecay/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qdecay {

double ConverseBoundParams::zeta_for(double t, double c, double diamond) {
  if (!(t >= 0.0)) throw std::domain_error("zeta_for: t < 0");
  return -std::expm1(-t * c * diamond);
}

double ConverseBoundParams::eps_for(double t, double c, double diamond) {
  if (!(t >= 0.0)) throw std::domain_error("eps_for: t < 0");
  return -std::expm1(-0.5 * t * c * diamond);
}

namespace {

double inverse_denominator(double c, GVariant variant) {
  if (variant == GVariant::kWorkedExample) return 9.0 / (9.0 * std::log(9.0) - 8.0);
  return 1.0 / kappa(c);
}

void check_zeta(double zeta) {
  if (!(zeta >= 0.0 && zeta < 1.0)) throw std::domain_error("g_factor: zeta outside [0, 1)");
}

}  // namespace

double g_objective(double tau, double zeta, double c, GVariant variant) {
  check_zeta(zeta);
  if (!(tau > 0.0 && tau < 1.0)) throw std::domain_error("g_objective: tau outside (0, 1)");
  const double k = inverse_denominator(c, variant);
  const double om = 1.0 - zeta;
  return om * om * tau / (tau + zeta) * (1.0 - tau * (1.0 - std::log(tau)) * k);
}

GFactor g_factor(double zeta, double c, GVariant variant, std::size_t grid_points) {
  check_zeta(zeta);
  if (variant == GVariant::kKappa && !(c >= 1.0))
    throw std::domain_error("g_factor: c < 1");
  if (grid_points < 3) throw std::invalid_argument("g_factor: grid too small");
  if (zeta == 0.0) return {1.0, 0.0};
  const double k = inverse_denominator(c, variant);
  const double om2 = (1.0 - zeta) * (1.0 - zeta);
  auto obj = [&](double x) {
    const double tau = std::exp(x);
    return om2 * tau / (tau + zeta) * (1.0 - tau * (1.0 - x) * k);
  };
  const double lo = std::log(std::max(1e-300, std::min(1e-4, 1e-3 * zeta)));
  const double hi = std::log1p(-1e-4);
  const double step = (hi - lo) / static_cast<double>(grid_points - 1);
  std::size_t best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double v = obj(lo + step * static_cast<double>(i));
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  double a = lo + step * static_cast<double>(best == 0 ? 0 : best - 1);
  double b = lo + step * static_cast<double>(std::min(best + 1, grid_points - 1));
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = obj(x1);
  double f2 = obj(x2);
  while (b - a > 1e-8) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = obj(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = obj(x1);
    }
  }
  const double xm = 0.5 * (a + b);
  const double fm = obj(xm);
  if (fm >= best_val) return {fm, std::exp(xm)};
  return {best_val, std::exp(lo + step * static_cast<double>(best))};
}

double replacement_converse_factor(double zeta, double c, std::optional<double> tau) {
  if (tau) return g_objective(*tau, zeta, c, GVariant::kKappa);
  return g_factor(zeta, c, GVariant::kKappa).g;
}

double classical_a_min(double eps, double m_tilde) {
  return 2.0 * f_almost_concavity(eps, m_tilde) / ((1.0 - eps) * m_tilde * m_tilde);
}

bool classical_feasible(double eps, double m_tilde, double a) {
  return a > 0.0 && a < 1.0 && a > classical_a_min(eps, m_tilde);
}

double classical_converse_factor(const ConverseBoundParams& p, ClassicalBranch branch) {
  if (!p.a) throw std::domain_error("classical_converse_factor: a not set");
  const double a = *p.a;
  const double e = p.eps;
  if (!classical_feasible(e, p.m_tilde, a)) {
    std::ostringstream os;
    os << "classical_converse_factor: infeasible triple (a=" << a << ", eps=" << e
       << ", mTilde=" << p.m_tilde << ")";
    throw std::domain_error(os.str());
  }
  if (branch == ClassicalBranch::kLargeD)
    return 1.0 - e - 2.0 * f_almost_concavity(e, p.m_tilde) / (a * p.m_tilde * p.m_tilde);
  return (1.0 - a) * (1.0 - e) * (1.0 - e) / ((1.0 - e) * (1.0 - a) + e * p.g_tilde);
}

DensityMatrix mix(const DensityMatrix& x, const DensityMatrix& y, double eps) {
  return DensityMatrix(ComplexMatrix((1.0 - eps) * x.matrix() + eps * y.matrix()));
}

namespace {

nlohmann::json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

void finish(BoundReport& r, const EntropyValue& lhs) {
  r.lhs_infinite = lhs.is_infinite();
  r.lhs = lhs.value;
  r.pass = r.lhs_infinite || r.lhs >= r.rhs - kBoundSlack;
}

// Scales an entropy by factor >= 0 with 0 * inf = 0.
double scaled(double factor, const EntropyValue& d) {
  if (factor == 0.0) return 0.0;
  return d.is_infinite() ? std::numeric_limits<double>::infinity() : factor * d.value;
}

double smallest_nonzero(const RealVector& v) {
  const double thr = kSupportRelTol * std::max(0.0, v.maxCoeff());
  double m = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v[i] > thr) m = std::min(m, v[i]);
  return m;
}

// Shared machinery of the classical bounds. omega = E(rho) = E(sigma).
BoundReport classical_core(const DensityMatrix& rho, const DensityMatrix& sigma,
                           const DensityMatrix& omega, const ConverseBoundParams& in,
                           const char* name) {
  BoundReport r;
  r.bound = name;
  r.params = in;
  ConverseBoundParams& p = r.params;

  // m~: smallest nonzero eigenvalue of sigma (+) omega restricted to supp(sigma).
  const EigenDecomposition& es = sigma.spectrum();
  const double thr = es.support_threshold();
  std::vector<Eigen::Index> supp;
  for (Eigen::Index i = 0; i < es.eigenvalues.size(); ++i)
    if (es.eigenvalues[i] > thr) supp.push_back(i);
  ComplexMatrix vs(es.eigenvectors.rows(), static_cast<Eigen::Index>(supp.size()));
  for (std::size_t k = 0; k < supp.size(); ++k)
    vs.col(static_cast<Eigen::Index>(k)) = es.eigenvectors.col(supp[k]);
  const ComplexMatrix wr = vs.adjoint() * omega.matrix() * vs;
  const RealVector wev = eigh(HermitianMatrix(ComplexMatrix(0.5 * (wr + wr.adjoint())))).eigenvalues;
  p.m_tilde = std::min({1.0, smallest_nonzero(es.eigenvalues), smallest_nonzero(wev)});
  p.g_tilde = loewner_min_coefficient(omega, sigma, SupportMode::kProjected).value;
  p.eps = ConverseBoundParams::eps_for(p.t, p.c, p.diamond);
  p.zeta = ConverseBoundParams::zeta_for(p.t, p.c, p.diamond);

  const double a_min = classical_a_min(p.eps, p.m_tilde);
  if (!p.a) {
    if (a_min >= 1.0) {
      std::ostringstream os;
      os << name << ": infeasible (a_min = " << a_min << " >= 1 at eps=" << p.eps
         << ", mTilde=" << p.m_tilde << ")";
      throw std::domain_error(os.str());
    }
    p.a = 0.5 * (std::max(0.0, a_min) + 1.0);
  }
  const EntropyValue d0 = relative_entropy(rho, sigma);
  const bool large = d0.is_infinite() || d0.value >= *p.a * p.m_tilde * p.m_tilde / 2.0;
  const ClassicalBranch branch = large ? ClassicalBranch::kLargeD : ClassicalBranch::kSmallD;
  r.factor = classical_converse_factor(p, branch);
  r.rhs = scaled(r.factor, d0);
  r.extras["D_pre"] = d0.value;
  r.extras["a_min"] = a_min;
  r.extras["branch_large_D"] = large ? 1.0 : 0.0;
  finish(r, relative_entropy(mix(rho, omega, p.eps), mix(sigma, omega, p.eps)));
  return r;
}

}  // namespace

nlohmann::json to_json(const BoundReport& r) {
  nlohmann::json params = {
      {"t", r.params.t},           {"c", r.params.c},
      {"diamond", r.params.diamond}, {"zeta", r.params.zeta},
      {"eps", r.params.eps},       {"mTilde", r.params.m_tilde},
      {"gTilde", r.params.g_tilde}};
  params["a"] = r.params.a ? nlohmann::json(*r.params.a) : nlohmann::json(nullptr);
  params["tau"] = r.params.tau ? nlohmann::json(*r.params.tau) : nlohmann::json("optimize");
  nlohmann::json j = {{"bound", r.bound},
                      {"lhs", number_or_null(r.lhs)},
                      {"lhsInfinite", r.lhs_infinite},
                      {"rhs", number_or_null(r.rhs)},
                      {"factor", r.factor},
                      {"pass", r.pass},
                      {"params", params}};
  if (r.optimizer) j["optimizer"] = {{"tauStar", r.optimizer->tau_star}, {"g", r.optimizer->g}};
  nlohmann::json extras = nlohmann::json::object();
  for (const auto& [k, v] : r.extras) extras[k] = number_or_null(v);
  j["extras"] = extras;
  return j;
}

BoundReport clsi_converse_check(const Lindbladian& l, const SuperOperator& propagator,
                                const DensityMatrix& rho, double t, GVariant variant) {
  if (rho.dim() != l.dim()) throw std::invalid_argument("clsi_converse_check: dimension mismatch");
  BoundReport r;
  r.bound = variant == GVariant::kKappa ? "clsi-converse" : "clsi-converse/worked-example";
  r.params.t = t;
  r.params.c = l.pp_index();
  r.params.diamond = l.diamond_norm_upper();
  r.params.zeta = ConverseBoundParams::zeta_for(t, r.params.c, r.params.diamond);
  const GFactor g = g_factor(r.params.zeta, r.params.c, variant);
  r.optimizer = g;
  r.params.tau = g.tau_star;
  r.factor = g.g;
  const DensityMatrix erho = l.fixed_point().apply(rho);
  const EntropyValue d0 = relative_entropy(rho, erho);
  if (d0.is_infinite())
    throw std::logic_error("clsi_converse_check: D(rho || E rho) infinite (internal inconsistency)");
  r.rhs = g.g * d0.value;
  r.extras["D_pre"] = d0.value;
  finish(r, relative_entropy(propagator.apply(rho), erho));
  return r;
}

BoundReport clsi_converse_check(const Lindbladian& l, const DensityMatrix& rho, double t,
                                GVariant variant) {
  return clsi_converse_check(l, l.propagator(t), rho, t, variant);
}

BoundReport classical_converse_check(const ConditionalExpectation& e, const DensityMatrix& rho,
                                     const DensityMatrix& sigma,
                                     const ConverseBoundParams& params) {
  if (rho.dim() != e.dim() || sigma.dim() != e.dim())
    throw std::invalid_argument("classical_converse_check: dimension mismatch");
  if (!commutes(rho.matrix(), sigma.matrix(), kDensityTol))
    throw std::invalid_argument("classical_converse_check: [rho, sigma] != 0");
  const DensityMatrix erho = e.apply(rho);
  const DensityMatrix esigma = e.apply(sigma);
  if (!commutes(rho.matrix(), erho.matrix(), kDensityTol))
    throw std::invalid_argument("classical_converse_check: [rho, E(rho)] != 0");
  if (trace_norm(HermitianMatrix(ComplexMatrix(erho.matrix() - esigma.matrix()))) >= kDensityTol)
    throw std::invalid_argument("classical_converse_check: E(rho) != E(sigma)");
  return classical_core(rho, sigma, esigma, params, "classical-converse");
}

BoundReport mutual_info_converse_check(const Lindbladian& l_on_b, const BipartiteDensity& rho,
                                       double t, std::optional<double> a) {
  const std::size_t da = rho.dim_a();
  const std::size_t db = rho.dim_b();
  if (l_on_b.dim() != db)
    throw std::invalid_argument("mutual_info_converse_check: L does not act on B");
  const ComplexMatrix& m = rho.state().matrix();
  const ComplexMatrix off = m - ComplexMatrix(m.diagonal().asDiagonal());
  if (max_abs_entry(off) > kDensityTol)
    throw std::invalid_argument("mutual_info_converse_check: non-classical input");
  const DensityMatrix ra = partial_trace(rho, Subsystem::A);
  const DensityMatrix rb = partial_trace(rho, Subsystem::B);
  const DensityMatrix sigma = tensor(ra, rb);
  const SuperOperator e_ab =
      tensor_superop(SuperOperator::identity(da), l_on_b.fixed_point().superop());
  const DensityMatrix erho = e_ab.apply(rho.state());
  const DensityMatrix esigma = e_ab.apply(sigma);
  if (trace_norm(HermitianMatrix(ComplexMatrix(erho.matrix() - esigma.matrix()))) >= kDensityTol)
    throw std::invalid_argument(
        "mutual_info_converse_check: E(rho) != E(rho^A (x) rho^B) for this input");
  if (!commutes(rho.state().matrix(), erho.matrix(), kDensityTol))
    throw std::invalid_argument("mutual_info_converse_check: [rho, E(rho)] != 0");
  ConverseBoundParams p;
  p.t = t;
  p.c = l_on_b.pp_index();
  p.diamond = l_on_b.diamond_norm_upper();
  p.a = a;
  BoundReport r = classical_core(rho.state(), sigma, esigma, p, "mutual-info-converse");
  // Express both sides as mutual informations; they equal the relative entropies above.
  const double i_pre = mutual_information(rho);
  const BipartiteDensity post(da, db, mix(rho.state(), esigma, r.params.eps));
  r.extras["I_pre"] = i_pre;
  r.rhs = r.factor * i_pre;
  finish(r, EntropyValue::of(mutual_information(post)));
  return r;
}

BoundReport decayed_state_bound_check(const DensityMatrix& rho, const DensityMatrix& sigma,
                                      const DensityMatrix& theta, const DensityMatrix& omega,
                                      double eps, double zeta, double c) {
  const std::size_t d = rho.dim();
  if (sigma.dim() != d || theta.dim() != d || omega.dim() != d)
    throw std::invalid_argument("decayed_state_bound_check: dimension mismatch");
  if (!(zeta >= 0.0 && zeta < 1.0 && eps >= zeta && eps < 1.0))
    throw std::domain_error("decayed_state_bound_check: need 0 <= zeta <= eps < 1");
  if (!(c > 0.0)) throw std::domain_error("decayed_state_bound_check: c <= 0");
  const double me =
      min_eigenvalue(HermitianMatrix(ComplexMatrix(c * omega.matrix() - theta.matrix())));
  if (me < -kDensityTol) {
    std::ostringstream os;
    os << "decayed_state_bound_check: theta not <= c omega (eigenvalue " << me << ")";
    throw std::domain_error(os.str());
  }
  BoundReport r;
  r.bound = "decayed-state";
  r.params.eps = eps;
  r.params.zeta = zeta;
  r.params.c = c;
  if (zeta == 0.0) {
    r.factor = 0.0;
  } else {
    const double q = (1.0 - eps) / (1.0 - zeta);
    r.factor = zeta / (c * eps) * q * q;
  }
  const EntropyValue dz = relative_entropy(mix(rho, omega, zeta), mix(sigma, omega, zeta));
  r.rhs = scaled(r.factor, dz);
  r.extras["D_zeta"] = dz.value;
  finish(r, relative_entropy(mix(rho, theta, eps), mix(sigma, theta, eps)));
  return r;
}

BoundReport origcompare_check(const DensityMatrix& rho, const DensityMatrix& sigma,
                              const DensityMatrix& omega, double eps, double zeta) {
  const std::size_t d = rho.dim();
  if (sigma.dim() != d || omega.dim() != d)
    throw std::invalid_argument("origcompare_check: dimension mismatch");
  if (!(eps >= 0.0 && eps < 1.0 && zeta >= 0.0 && zeta < 1.0))
    throw std::domain_error("origcompare_check: eps, zeta must lie in [0, 1)");
  const double me =
      min_eigenvalue(HermitianMatrix(ComplexMatrix(rho.matrix() - (1.0 - zeta) * sigma.matrix())));
  if (me < -kDensityTol) {
    std::ostringstream os;
    os << "origcompare_check: rho not >= (1 - zeta) sigma (eigenvalue " << me << ")";
    throw std::domain_error(os.str());
  }
  BoundReport r;
  r.bound = "origcompare";
  r.params.eps = eps;
  r.params.zeta = zeta;
  r.params.g_tilde = loewner_min_coefficient(omega, sigma, SupportMode::kProjected).value;
  const double k =
      (1.0 + eps * (r.params.g_tilde / (1.0 - zeta) - 1.0)) / ((1.0 - eps) * (1.0 - eps));
  r.factor = 1.0 / k;
  const EntropyValue d0 = relative_entropy(rho, sigma);
  r.rhs = scaled(r.factor, d0);
  r.extras["D_pre"] = d0.value;
  r.extras["K"] = k;
  finish(r, relative_entropy(mix(rho, omega, eps), mix(sigma, omega, eps)));
  return r;
}

}  // namespace qdecay
