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

#include "qdecay/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qdecay {

double eta(double x) { return x > 0.0 ? -x * std::log(x) : 0.0; }

double eta_difference(double x, double delta) {
  if (x <= 0.0) return eta(delta);
  if (x + delta <= 0.0) return -eta(x);
  // -(x+d) ln(x+d) + x ln x = -x log1p(d/x) - d ln(x+d)
  return -x * std::log1p(delta / x) - delta * std::log(x + delta);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  const RealVector& l = rho.spectrum().eigenvalues;
  for (Eigen::Index i = 0; i < l.size(); ++i) s += eta(l[i]);
  return s;
}

EntropyValue relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw std::invalid_argument("relative_entropy: dimension mismatch");
  const EigenDecomposition& es = sigma.spectrum();
  const double thr = es.support_threshold();
  const ComplexMatrix rt = es.eigenvectors.adjoint() * rho.matrix() * es.eigenvectors;
  double outside = 0.0;
  double cross = 0.0;  // tr(rho ln sigma) on supp(sigma)
  for (Eigen::Index i = 0; i < es.eigenvalues.size(); ++i) {
    const double w = rt(i, i).real();
    if (es.eigenvalues[i] > thr)
      cross += w * std::log(es.eigenvalues[i]);
    else
      outside += w;
  }
  if (outside > kDensityTol) return EntropyValue::infinite();
  return EntropyValue::of(-von_neumann_entropy(rho) - cross);
}

double mutual_information(const BipartiteDensity& rho) {
  const double sa = von_neumann_entropy(partial_trace(rho, Subsystem::A));
  const double sb = von_neumann_entropy(partial_trace(rho, Subsystem::B));
  return sa + sb - von_neumann_entropy(rho.state());
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("binary_entropy: p outside [0, 1]");
  return eta(p) + eta(1.0 - p);
}

double kappa(double c) {
  if (!(c >= 1.0)) throw std::domain_error("kappa: c < 1");
  const double u = c - 1.0;
  if (u < 1e-2) {
    // sum_{n>=2} (-1)^n u^{n-2} / (n (n-1))
    double s = 0.0;
    double p = 1.0;
    for (int n = 2; n < 14; ++n) {
      s += ((n % 2 == 0) ? 1.0 : -1.0) * p / (n * (n - 1.0));
      p *= u;
    }
    return s;
  }
  return (c * std::log(c) - c + 1.0) / (u * u);
}

double log_mean_weight(double a, double b) {
  if (!(a > 0.0 && b > 0.0))
    throw std::domain_error("log_mean_weight: non-positive argument");
  if (a == b) return 1.0 / a;
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  return std::log1p((hi - lo) / lo) / (hi - lo);
}

PinskerReport pinsker_check(const DensityMatrix& rho, const DensityMatrix& sigma) {
  PinskerReport r;
  const EntropyValue d = relative_entropy(rho, sigma);
  r.relative_entropy = d.value;
  r.trace_distance = trace_norm(HermitianMatrix(ComplexMatrix(rho.matrix() - sigma.matrix())));
  r.pinsker_bound = 0.5 * r.trace_distance * r.trace_distance;
  r.pinsker_pass = d.is_infinite() || d.value >= r.pinsker_bound - kPinskerSlack;
  r.commuting = commutes(rho.matrix(), sigma.matrix(), kDensityTol);
  if (r.commuting) {
    const double x = 1.0 - 0.25 * r.trace_distance * r.trace_distance;
    const double refined = x > 0.0 ? -std::log(x) : std::numeric_limits<double>::infinity();
    r.refined_bound = std::max(refined, r.pinsker_bound);
    r.refined_pass = d.is_infinite() || d.value >= r.refined_bound - kPinskerSlack;
  }
  return r;
}

double f_almost_concavity(double eps, double m_tilde) {
  if (!(eps >= 0.0 && eps < 1.0))
    throw std::domain_error("f_almost_concavity: eps outside [0, 1)");
  if (!(m_tilde > 0.0 && m_tilde <= 1.0))
    throw std::domain_error("f_almost_concavity: m_tilde outside (0, 1]");
  if (eps == 0.0) return 0.0;
  const double inv = 1.0 / m_tilde;
  return binary_entropy(eps) + eps * std::log(eps + (1.0 - eps) * inv) +
         (1.0 - eps) * std::log((1.0 - eps) + eps * inv);
}

EntropyValue weighted_norm_sq(const HermitianMatrix& x, const EigenDecomposition& omega) {
  if (x.dim() != static_cast<std::size_t>(omega.eigenvalues.size()))
    throw std::invalid_argument("weighted_norm_sq: dimension mismatch");
  const double thr = omega.support_threshold();
  const ComplexMatrix xt = omega.eigenvectors.adjoint() * x.matrix() * omega.eigenvectors;
  const double tol = kHermitianTol * std::max(1.0, max_abs_entry(x.matrix()));
  const Eigen::Index n = xt.rows();
  double s = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double lj = omega.eigenvalues[j];
    for (Eigen::Index i = 0; i < n; ++i) {
      const double li = omega.eigenvalues[i];
      const double a2 = std::norm(xt(i, j));
      if (li > thr && lj > thr)
        s += a2 * log_mean_weight(li, lj);
      else if (std::sqrt(a2) > tol)
        return EntropyValue::infinite();
    }
  }
  return EntropyValue::of(s);
}

EntropyValue weighted_norm_sq(const HermitianMatrix& x, const DensityMatrix& omega) {
  return weighted_norm_sq(x, omega.spectrum());
}

QuadratureRule gauss_legendre_unit(std::size_t n) {
  if (n == 0) throw std::invalid_argument("gauss_legendre_unit: n == 0");
  QuadratureRule q;
  q.nodes.resize(n);
  q.weights.resize(n);
  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        const double dj = static_cast<double>(j);
        p1 = ((2.0 * dj - 1.0) * z * p2 - (dj - 1.0) * p3) / dj;
      }
      pp = dn * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    // Map [-1, 1] to [0, 1].
    q.nodes[i] = 0.5 * (1.0 - z);
    q.nodes[n - 1 - i] = 0.5 * (1.0 + z);
    q.weights[i] = 0.5 * w;
    q.weights[n - 1 - i] = 0.5 * w;
  }
  return q;
}

namespace {

// Quintic smoothstep and its derivative; clusters nodes at 0 and 1.
double grade(double x) { return x * x * x * (10.0 - 15.0 * x + 6.0 * x * x); }
double grade_prime(double x) {
  const double y = x * (1.0 - x);
  return 30.0 * y * y;
}

}  // namespace

double relative_entropy_integral_form(const DensityMatrix& rho,
                                      const DensityMatrix& sigma,
                                      std::size_t quad_points) {
  if (quad_points < 8)
    throw std::invalid_argument("relative_entropy_integral_form: quad_points < 8");
  if (relative_entropy(rho, sigma).is_infinite())
    throw std::domain_error("relative_entropy_integral_form: ker sigma not in ker rho");
  const HermitianMatrix diff(ComplexMatrix(rho.matrix() - sigma.matrix()));
  const QuadratureRule q = gauss_legendre_unit(quad_points);
  std::vector<double> s(quad_points);
  std::vector<double> ws(quad_points);
  for (std::size_t k = 0; k < quad_points; ++k) {
    s[k] = grade(q.nodes[k]);
    ws[k] = q.weights[k] * grade_prime(q.nodes[k]);
  }
  double total = 0.0;
  for (std::size_t a = 0; a < quad_points; ++a) {
    double inner = 0.0;
    for (std::size_t b = 0; b < quad_points; ++b) {
      const double t = s[a] * s[b];
      const ComplexMatrix wt = (1.0 - t) * sigma.matrix() + t * rho.matrix();
      const EntropyValue f = weighted_norm_sq(diff, eigh(HermitianMatrix(wt)));
      if (f.is_infinite())
        throw std::domain_error("relative_entropy_integral_form: support violation");
      inner += ws[b] * f.value;
    }
    total += ws[a] * s[a] * inner;
  }
  return total;
}

SandwichReport gaorouze_sandwich_check(const DensityMatrix& rho,
                                       const DensityMatrix& sigma) {
  const ExtendedReal c = loewner_min_coefficient(rho, sigma, SupportMode::kStrict);
  if (c.is_infinite())
    throw std::domain_error("gaorouze_sandwich_check: rho is not dominated by c sigma");
  SandwichReport r;
  r.c = std::max(1.0, c.value);
  r.kappa = kappa(r.c);
  const HermitianMatrix diff(ComplexMatrix(rho.matrix() - sigma.matrix()));
  const EntropyValue n2 = weighted_norm_sq(diff, sigma);
  const EntropyValue d = relative_entropy(rho, sigma);
  if (n2.is_infinite() || d.is_infinite())
    throw std::logic_error("gaorouze_sandwich_check: infinite value on a comparable pair");
  r.weighted_norm = n2.value;
  r.relative_entropy = d.value;
  r.lower_slack = d.value - r.kappa * n2.value;
  r.upper_slack = n2.value - d.value;
  r.pass = r.lower_slack >= -kBoundSlack && r.upper_slack >= -kBoundSlack;
  return r;
}

}  // namespace qdecay
