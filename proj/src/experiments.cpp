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

#include "qdecay/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qdecay/entropy.hpp"
#include "qdecay/random.hpp"

namespace qdecay {

const char* to_string(NoiseModel n) {
  return n == NoiseModel::kDepolarizing ? "depolarizing" : "dephasing-y";
}

NoiseModel noise_from_string(const std::string& s) {
  if (s == "depolarizing") return NoiseModel::kDepolarizing;
  if (s == "dephasing-y") return NoiseModel::kDephasingY;
  throw std::invalid_argument("unknown noise model: " + s);
}

namespace {

void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::domain_error("lambda outside [0, 1]");
}

ComplexMatrix rho_matrix(double theta, double lambda, std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  ComplexMatrix m = ComplexMatrix::Identity(n, n) * (lambda / static_cast<double>(d));
  m(0, 0) += (1.0 - lambda) * c * c;
  m(0, 1) += (1.0 - lambda) * c * s;
  m(1, 0) += (1.0 - lambda) * c * s;
  m(1, 1) += (1.0 - lambda) * s * s;
  return m;
}

// Joint state 1/2 |0><0| (x) W r_theta W^dag + 1/2 |1><1| (x) W r_-theta W^dag.
ComplexMatrix cq_state(const ComplexMatrix& r_plus, const ComplexMatrix& r_minus) {
  return 0.5 * (tensor(ket_bra(2, 0, 0), r_plus) + tensor(ket_bra(2, 1, 1), r_minus));
}

void check_grid(const std::vector<double>& grid, double max_theta) {
  if (grid.empty()) throw std::invalid_argument("theta grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0 && grid[i] <= max_theta))
      throw std::invalid_argument("theta grid value outside (0, pi/4]");
    if (i > 0 && !(grid[i] < grid[i - 1]))
      throw std::invalid_argument("theta grid is not strictly decreasing");
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

DensityMatrix rho_theta_lambda(double theta, double lambda, std::size_t d) {
  if (d < 2) throw std::domain_error("rho_theta_lambda: d < 2");
  check_lambda(lambda);
  return DensityMatrix(rho_matrix(theta, lambda, d));
}

BipartiteDensity omega_theta_lambda(double theta, double lambda, std::size_t d) {
  if (d < 2) throw std::domain_error("omega_theta_lambda: d < 2");
  check_lambda(lambda);
  return BipartiteDensity(
      2, d, DensityMatrix(cq_state(rho_matrix(theta, lambda, d), rho_matrix(-theta, lambda, d))));
}

double pinched_relative_entropy_closed_form(double theta, double lambda, std::size_t d) {
  if (d < 2) throw std::domain_error("pinched_relative_entropy_closed_form: d < 2");
  check_lambda(lambda);
  // Spectrum {q0, q1, lambda/d, ...}; diagonal {q0 - delta, q1 + delta, lambda/d, ...}.
  const double dd = static_cast<double>(d);
  const double s = std::sin(theta);
  const double q0 = 1.0 - lambda + lambda / dd;
  const double q1 = lambda / dd;
  const double delta = (1.0 - lambda) * s * s;
  return eta_difference(q0, -delta) + eta_difference(q1, delta);
}

KrausChannel noise_channel(NoiseModel noise, double lambda, std::size_t d) {
  if (noise == NoiseModel::kDephasingY) {
    if (d != 2) throw std::invalid_argument("dephasing-y noise requires d = 2");
    return dephasing_y(lambda);
  }
  return depolarizing(d, lambda);
}

std::string SweepResult::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

nlohmann::json SweepResult::to_json() const {
  return {{"columns", columns}, {"rows", rows}, {"metadata", metadata}, {"warnings", warnings}};
}

double SweepResult::at(std::size_t row, const std::string& column) const {
  const auto it = std::find(columns.begin(), columns.end(), column);
  if (it == columns.end()) throw std::out_of_range("SweepResult: no column " + column);
  return rows.at(row).at(static_cast<std::size_t>(it - columns.begin()));
}

std::vector<double> log_grid(double theta_max, double theta_min, std::size_t points) {
  if (!(theta_max > theta_min && theta_min > 0.0) || points < 2)
    throw std::invalid_argument("log_grid: need theta_max > theta_min > 0 and points >= 2");
  std::vector<double> g(points);
  const double a = std::log10(theta_max);
  const double b = std::log10(theta_min);
  for (std::size_t i = 0; i < points; ++i)
    g[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1));
  g.front() = theta_max;
  g.back() = theta_min;
  return g;
}

void SuddenDecayConfig::validate() const {
  check_grid(theta_grid, std::numbers::pi / 4.0);
  check_lambda(lambda);
  if (dim < 2) throw std::invalid_argument("SuddenDecayConfig: dim < 2");
  if (noise == NoiseModel::kDephasingY && dim != 2)
    throw std::invalid_argument("SuddenDecayConfig: dephasing-y requires dim = 2");
}

SweepResult sudden_decay_sweep(const SuddenDecayConfig& cfg) {
  cfg.validate();
  const std::size_t d = cfg.dim;
  const ConditionalExpectation pinch = pinching(ComplexMatrix::Identity(
      static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)));
  const KrausChannel noise = noise_channel(cfg.noise, cfg.lambda, d);
  SweepResult r;
  r.columns = {"theta",     "lambda",       "D_pre",         "D_pre_closed_form",
               "D_post",    "D_post_closed_form", "ratio",   "ratio_ln_inv_theta",
               "I_post"};
  for (double theta : cfg.theta_grid) {
    const DensityMatrix pre = rho_theta_lambda(theta, 0.0, d);
    const DensityMatrix post = noise.apply(pre);
    const double d_pre = relative_entropy(pre, pinch.apply(pre)).value;
    const double d_post = relative_entropy(post, pinch.apply(post)).value;
    // The B-side noise on the classical-quantum state gives the same number.
    const BipartiteDensity w0 = omega_theta_lambda(theta, 0.0, d);
    const SuperOperator id_noise =
        tensor_superop(SuperOperator::identity(2), SuperOperator::from_kraus(noise));
    const double i_post = mutual_information(BipartiteDensity(2, d, id_noise.apply(w0.state())));
    const double ratio = d_post / d_pre;
    r.rows.push_back({theta, cfg.lambda, d_pre,
                      pinched_relative_entropy_closed_form(theta, 0.0, d), d_post,
                      pinched_relative_entropy_closed_form(theta, cfg.lambda, d), ratio,
                      ratio * std::log(1.0 / theta), i_post});
    if (theta < kMatrixRouteFloor)
      r.warnings.push_back("theta = " + format_double(theta) +
                           " is below 1e-7; double precision no longer resolves D_pre");
  }
  r.metadata = {{"experiment", "sudden-decay"},
                {"lambda", cfg.lambda},
                {"dim", d},
                {"noise", to_string(cfg.noise)},
                {"version", kVersion}};
  return r;
}

nlohmann::json ExpansionReport::to_json() const {
  return {{"theta", theta},
          {"lambda", lambda},
          {"dim", dim},
          {"exact", exact},
          {"exactClosedForm", exact_closed_form},
          {"quotedCoefficient", quoted_coefficient},
          {"quotedRelDeviation", quoted_rel_deviation},
          {"leadingCoefficient", leading_coefficient},
          {"leadingRelDeviation", leading_rel_deviation}};
}

ExpansionReport expansion_consistency_check(double theta, double lambda, std::size_t d) {
  if (!(theta > 0.0 && theta <= 1e-3))
    throw std::domain_error("expansion_consistency_check: theta outside (0, 1e-3]");
  if (!(lambda > 0.0 && lambda <= 1.0))
    throw std::domain_error("expansion_consistency_check: lambda outside (0, 1]");
  if (d < 2) throw std::domain_error("expansion_consistency_check: d < 2");
  ExpansionReport r;
  r.theta = theta;
  r.lambda = lambda;
  r.dim = d;
  const DensityMatrix rho = rho_theta_lambda(theta, lambda, d);
  const ConditionalExpectation pinch = pinching(ComplexMatrix::Identity(
      static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)));
  r.exact = relative_entropy(rho, pinch.apply(rho)).value;
  r.exact_closed_form = pinched_relative_entropy_closed_form(theta, lambda, d);
  const double dd = static_cast<double>(d);
  const double q0 = 1.0 - lambda * (dd - 1.0) / dd;
  const double q1 = lambda / dd;
  r.quoted_coefficient =
      0.5 * ((1.0 - lambda) * std::log(q0) + 1.0 - lambda) - (1.0 - lambda) * std::log(q1);
  r.leading_coefficient = (1.0 - lambda) * std::log(q0 / q1);
  const double t2 = theta * theta;
  auto rel = [&](double coeff) {
    if (r.exact == 0.0) return coeff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(r.exact - coeff * t2) / r.exact;
  };
  r.quoted_rel_deviation = rel(r.quoted_coefficient);
  r.leading_rel_deviation = rel(r.leading_coefficient);
  return r;
}

FragileFrame find_fragile_frame(const ConditionalExpectation& e) {
  const std::size_t d = e.dim();
  const auto n = static_cast<Eigen::Index>(d);
  const ComplexMatrix& m = e.superop().matrix();
  if (max_abs_entry(m - ComplexMatrix::Identity(n * n, n * n)) < 1e-9)
    throw std::invalid_argument("group_fragility_demo: E is the identity, no decay to exhibit");
  CounterRng rng(derive_seed(0x5EED, stream_id("fragile_frame"), 0));
  const HermitianMatrix g = random_hermitian(d, rng);
  const ComplexMatrix eg = e.apply(g.matrix());
  const EigenDecomposition eig = eigh(HermitianMatrix(ComplexMatrix(0.5 * (eg + eg.adjoint()))));
  const double spread = std::max(1.0, eig.eigenvalues.cwiseAbs().maxCoeff());
  auto killed = [&](const ComplexMatrix& x) { return max_abs_entry(e.apply(x)) < 1e-8; };
  // The probe states only have Z and X components in the frame.
  auto valid = [&](const ComplexMatrix& w) {
    return killed(w * pauli_z() * w.adjoint()) && killed(w * pauli_x() * w.adjoint());
  };
  FragileFrame f;
  // A degenerate eigenspace of E(G) spans a depolarized factor.
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (std::abs(eig.eigenvalues[i + 1] - eig.eigenvalues[i]) < 1e-7 * spread) {
      ComplexMatrix w(n, 2);
      w.col(0) = eig.eigenvectors.col(i);
      w.col(1) = eig.eigenvectors.col(i + 1);
      if (valid(w)) {
        f.isometry = w;
        f.depolarized_factor = true;
        return f;
      }
    }
  }
  // Otherwise two eigenvectors in different blocks act as the Y basis.
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const ComplexMatrix x = eig.eigenvectors.col(i) * eig.eigenvectors.col(j).adjoint();
      if (!killed(x)) continue;
      ComplexMatrix w(n, 2);
      w.col(0) = (eig.eigenvectors.col(i) + eig.eigenvectors.col(j)) / std::sqrt(2.0);
      w.col(1) = Complex(0.0, -1.0) * (eig.eigenvectors.col(i) - eig.eigenvectors.col(j)) /
                 std::sqrt(2.0);
      if (valid(w)) {
        f.isometry = w;
        return f;
      }
    }
  throw std::runtime_error("group_fragility_demo: no fragile frame found for E");
}

SweepResult group_fragility_demo(const GroupLindbladian& g, double t,
                                 const std::vector<double>& theta_grid) {
  if (!(t >= 0.0)) throw std::invalid_argument("group_fragility_demo: t < 0");
  check_grid(theta_grid, std::numbers::pi / 4.0);
  const Lindbladian l = group_lindbladian(g);
  const FragileFrame frame = find_fragile_frame(l.fixed_point());
  const std::size_t d = l.dim();
  const SuperOperator ext = tensor_superop(SuperOperator::identity(2), l.propagator(t));
  const ComplexMatrix& w = frame.isometry;
  SweepResult r;
  r.columns = {"theta", "t", "I_pre", "I_post", "ratio_pre_over_post", "ratio_post_over_pre"};
  for (double theta : theta_grid) {
    const ComplexMatrix rp = w * rho_matrix(theta, 0.0, 2) * w.adjoint();
    const ComplexMatrix rm = w * rho_matrix(-theta, 0.0, 2) * w.adjoint();
    const DensityMatrix pre(cq_state(rp, rm));
    const double i_pre = mutual_information(BipartiteDensity(2, d, pre));
    const double i_post = mutual_information(BipartiteDensity(2, d, ext.apply(pre)));
    r.rows.push_back({theta, t, i_pre, i_post, i_pre / i_post, i_post / i_pre});
    if (theta < kMatrixRouteFloor)
      r.warnings.push_back("theta = " + format_double(theta) + " is below 1e-7");
  }
  r.metadata = {{"experiment", "group-fragility"},
                {"t", t},
                {"dim", d},
                {"frame", frame.depolarized_factor ? "depolarized-factor" : "block-pair"},
                {"ppIndex", l.pp_index()},
                {"version", kVersion}};
  return r;
}

KrausChannel flagged_channel(double lambda, double p, NoiseModel noise) {
  check_lambda(lambda);
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("flagged_channel: p outside [0, 1]");
  const KrausChannel phi = noise_channel(noise, lambda, 2);
  const KrausChannel comp = complementary_channel(phi);
  const std::size_t nk = comp.dim_out();
  const std::size_t inner = std::max<std::size_t>(2, nk);
  const auto ni = static_cast<Eigen::Index>(inner);
  std::vector<ComplexMatrix> ks;
  if (p > 0.0) {
    ComplexMatrix k = ComplexMatrix::Zero(2 * ni, 2);
    k.topRows(2) = std::sqrt(p) * ComplexMatrix::Identity(2, 2);
    ks.push_back(std::move(k));
  }
  if (p < 1.0) {
    for (const auto& f : comp.kraus()) {
      ComplexMatrix k = ComplexMatrix::Zero(2 * ni, 2);
      k.block(ni, 0, f.rows(), 2) = std::sqrt(1.0 - p) * f;
      ks.push_back(std::move(k));
    }
  }
  return KrausChannel(2, 2 * inner, std::move(ks));
}

void PrivateRateConfig::validate() const {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("PrivateRateConfig: p outside (0, 1)");
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::invalid_argument("PrivateRateConfig: lambda outside (0, 1)");
  check_grid(theta_grid, std::numbers::pi / 4.0);
}

std::vector<double> private_rate_default_grid() {
  std::vector<double> g;
  for (int k = 1; k <= 150; ++k) g.push_back(std::pow(10.0, -k));
  return g;
}

SweepResult private_rate_lower_bound(const PrivateRateConfig& cfg) {
  cfg.validate();
  const KrausChannel phi = noise_channel(cfg.noise, cfg.lambda, 2);
  const SuperOperator id_phi =
      tensor_superop(SuperOperator::identity(2), SuperOperator::from_kraus(phi));
  SweepResult r;
  r.columns = {"theta", "I_AB", "I_AE", "bound", "spectral_route", "I_AB_closed_form",
               "I_AE_closed_form"};
  double best = -std::numeric_limits<double>::infinity();
  double best_theta = 0.0;
  std::size_t spectral_rows = 0;
  for (double theta : cfg.theta_grid) {
    const double iab_cf = pinched_relative_entropy_closed_form(theta, 0.0, 2);
    const double iae_cf = pinched_relative_entropy_closed_form(theta, cfg.lambda, 2);
    double iab = iab_cf;
    double iae = iae_cf;
    const bool spectral = theta < kMatrixRouteFloor;
    if (!spectral) {
      const BipartiteDensity w0 = omega_theta_lambda(theta, 0.0, 2);
      iab = mutual_information(w0);
      iae = mutual_information(BipartiteDensity(2, 2, id_phi.apply(w0.state())));
    } else {
      ++spectral_rows;
    }
    const double bound = cfg.p * iab - (1.0 - cfg.p) * iae;
    if (bound > best) {
      best = bound;
      best_theta = theta;
    }
    r.rows.push_back({theta, iab, iae, bound, spectral ? 1.0 : 0.0, iab_cf, iae_cf});
  }
  if (spectral_rows > 0)
    r.warnings.push_back(std::to_string(spectral_rows) +
                         " rows below theta = 1e-7 use the exact spectral formula");
  r.metadata = {{"experiment", "private-rate"},
                {"p", cfg.p},
                {"lambda", cfg.lambda},
                {"noise", to_string(cfg.noise)},
                {"maxBound", best},
                {"argmaxTheta", best_theta},
                {"positive", best > 0.0},
                {"version", kVersion}};
  return r;
}

}  // namespace qdecay
