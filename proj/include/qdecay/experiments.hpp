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

#ifndef QDECAY_EXPERIMENTS_HPP_
#define QDECAY_EXPERIMENTS_HPP_

#include <string>
#include <vector>

#include "json.hpp"
#include "qdecay/channels.hpp"

namespace qdecay {

inline constexpr const char* kVersion = "0.1.0";

// Below this angle the matrix route loses the theta^2 scale.
inline constexpr double kMatrixRouteFloor = 1e-7;

enum class NoiseModel { kDepolarizing, kDephasingY };

const char* to_string(NoiseModel n);
NoiseModel noise_from_string(const std::string& s);

// (1 - lambda) |psi><psi| + lambda I/d, psi = cos(theta)|0> + sin(theta)|1>.
DensityMatrix rho_theta_lambda(double theta, double lambda, std::size_t d = 2);
// 1/2 |0><0| (x) rho_{theta,lambda} + 1/2 |1><1| (x) rho_{-theta,lambda}.
BipartiteDensity omega_theta_lambda(double theta, double lambda, std::size_t d = 2);

// D(rho_{theta,lambda} || pinch_Z rho_{theta,lambda}) from the exact spectra,
// written with log1p so it stays accurate for any representable sin^2 theta.
double pinched_relative_entropy_closed_form(double theta, double lambda, std::size_t d = 2);

// The noise channel of a sweep on C^d; dephasing-Y requires d = 2.
KrausChannel noise_channel(NoiseModel noise, double lambda, std::size_t d);

struct SweepResult {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  nlohmann::json metadata = nlohmann::json::object();
  std::vector<std::string> warnings;

  // Header row, %.17g decimals, LF line endings.
  std::string to_csv() const;
  nlohmann::json to_json() const;
  double at(std::size_t row, const std::string& column) const;
};

// theta_max, ..., theta_min, log-spaced and strictly decreasing.
std::vector<double> log_grid(double theta_max, double theta_min, std::size_t points);

struct SuddenDecayConfig {
  std::vector<double> theta_grid;
  double lambda = 0.1;
  std::size_t dim = 2;
  NoiseModel noise = NoiseModel::kDepolarizing;

  void validate() const;
};

SweepResult sudden_decay_sweep(const SuddenDecayConfig& cfg);

struct ExpansionReport {
  double theta = 0.0;
  double lambda = 0.0;
  std::size_t dim = 2;
  double exact = 0.0;              // matrix route
  double exact_closed_form = 0.0;  // spectral route
  double quoted_coefficient = 0.0;
  double quoted_rel_deviation = 0.0;
  double leading_coefficient = 0.0;  // (1 - lambda) ln(q0 / q1)
  double leading_rel_deviation = 0.0;

  nlohmann::json to_json() const;
};

// Compares exact D_post against the quoted theta^2 coefficient
// 1/2((1-l) ln(1 - l(d-1)/d) + 1 - l) - (1-l) ln(l/d), and against the
// leading coefficient of the exact expansion. theta <= 1e-3, lambda in (0, 1].
ExpansionReport expansion_consistency_check(double theta, double lambda, std::size_t d = 2);

// Faithful frame of the fixed-point projection used by the fragility demo.
struct FragileFrame {
  ComplexMatrix isometry;  // d x 2
  bool depolarized_factor = false;  // true: frame inside one C factor
};
FragileFrame find_fragile_frame(const ConditionalExpectation& e);

SweepResult group_fragility_demo(const GroupLindbladian& g, double t,
                                 const std::vector<double>& theta_grid);

// p |0><0| (x) rho + (1 - p) |1><1| (x) Phi^c_lambda(rho) on a qubit input.
KrausChannel flagged_channel(double lambda, double p, NoiseModel noise = NoiseModel::kDepolarizing);

struct PrivateRateConfig {
  double p = 0.01;
  double lambda = 0.01;
  std::vector<double> theta_grid;
  NoiseModel noise = NoiseModel::kDepolarizing;

  void validate() const;
};

// One point per decade, 1e-1 down to 1e-150.
std::vector<double> private_rate_default_grid();

SweepResult private_rate_lower_bound(const PrivateRateConfig& cfg);

}  // namespace qdecay

#endif  // QDECAY_EXPERIMENTS_HPP_
