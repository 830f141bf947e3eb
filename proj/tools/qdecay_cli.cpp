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

// qdecay command-line driver. Every command writes its output once, at the
// end, to stdout or to --out. Exit codes: 0 ok, 1 numerical failure,
// 2 bad flags, 3 inequality violation (verify only).

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qdecay/bounds.hpp"
#include "qdecay/channels.hpp"
#include "qdecay/experiments.hpp"
#include "qdecay/suites.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumeric = 1;
constexpr int kExitUsage = 2;
constexpr int kExitViolation = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  std::string path;
  std::string format = "csv";
};

void add_output(CLI::App* cmd, Output& o, bool json_only = false) {
  cmd->add_option("--out", o.path, "Output file (default: stdout)");
  if (json_only) {
    o.format = "json";
  } else {
    cmd->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
  }
}

void emit(const Output& o, const std::string& text) {
  if (o.path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(o.path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + o.path);
  f << text;
}

std::string render(const Output& o, const qdecay::SweepResult& r) {
  return o.format == "json" ? r.to_json().dump(2) + "\n" : r.to_csv();
}

void warn(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

std::uint64_t seed_from_env() {
  const char* s = std::getenv("QDECAY_SEED");
  if (s == nullptr || *s == '\0') return 0;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used, 0);
    if (s[used] != '\0') throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("QDECAY_SEED is not an unsigned integer: ") + s);
  }
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

// ------------------------------------------------------------- commands

struct SuddenDecayArgs {
  double lambda = 0.1;
  double theta_min = 1e-6;
  double theta_max = 1e-2;
  std::size_t points = 9;
  std::size_t dim = 2;
  std::string noise = "depolarizing";
  Output out;
};

int run_sudden_decay(const SuddenDecayArgs& a) {
  qdecay::SuddenDecayConfig cfg;
  cfg.lambda = a.lambda;
  cfg.dim = a.dim;
  cfg.noise = qdecay::noise_from_string(a.noise);
  try {
    cfg.theta_grid = qdecay::log_grid(a.theta_max, a.theta_min, a.points);
    cfg.validate();
  } catch (const std::logic_error& e) {
    throw UsageError(e.what());
  }
  const qdecay::SweepResult r = qdecay::sudden_decay_sweep(cfg);
  warn(r.warnings);
  emit(a.out, render(a.out, r));
  return kExitOk;
}

struct GTableArgs {
  std::string t;
  std::string variant = "paper-example";
  double c = 4.0;
  double diamond = 0.75;
  Output out;
};

int run_g_table(const GTableArgs& a) {
  const std::vector<double> ts = parse_list(a.t);
  for (double t : ts)
    if (!(t > 0.0)) throw UsageError("t must be positive");
  if (!(a.c >= 1.0)) throw UsageError("--c must be >= 1");
  if (!(a.diamond > 0.0)) throw UsageError("--diamond must be positive");
  const qdecay::GVariant v =
      a.variant == "theorem" ? qdecay::GVariant::kKappa : qdecay::GVariant::kWorkedExample;
  qdecay::SweepResult r;
  r.columns = {"t", "zeta", "eps", "g", "tau_star"};
  for (double t : ts) {
    const double zeta = qdecay::ConverseBoundParams::zeta_for(t, a.c, a.diamond);
    const double eps = qdecay::ConverseBoundParams::eps_for(t, a.c, a.diamond);
    const qdecay::GFactor g = qdecay::g_factor(zeta, a.c, v);
    r.rows.push_back({t, zeta, eps, g.g, g.tau_star});
  }
  // Numerical companion to the supplied diamond constant for the qubit
  // depolarizing generator Id - E.
  const qdecay::SuperOperator gen = qdecay::depolarizing_lindbladian(2, a.diamond).generator();
  r.metadata = {{"command", "g-table"},
                {"variant", a.variant},
                {"theoremFaithful", v == qdecay::GVariant::kKappa},
                {"c", a.c},
                {"diamond", a.diamond},
                {"diamondEstimateQubitDepolarizing", qdecay::diamond_norm_estimate(gen, 4)}};
  emit(a.out, render(a.out, r));
  return kExitOk;
}

struct VerifyArgs {
  std::string suite = "all";
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  bool seed_given = false;
  Output out;
};

int run_verify(VerifyArgs a) {
  if (!a.seed_given) a.seed = seed_from_env();
  if (a.suite != "all") {
    const auto& names = qdecay::suite_names();
    if (std::find(names.begin(), names.end(), a.suite) == names.end())
      throw UsageError("unknown suite: " + a.suite);
  }
  const nlohmann::json report = qdecay::run_verify(a.suite, a.samples, a.seed);
  emit(a.out, report.dump(2) + "\n");
  for (const auto& s : report["suites"]) {
    for (const auto& f : s["failures"])
      std::cerr << "violation: suite=" << s["name"].get<std::string>() << " seed=" << a.seed
                << " counter=" << f["counter"] << " check=" << f["check"].get<std::string>()
                << " slack=" << f["slack"] << "\n";
  }
  return report["pass"].get<bool>() ? kExitOk : kExitViolation;
}

struct PrivateRateArgs {
  double p = 0.01;
  double lambda = 0.01;
  std::string noise = "depolarizing";
  Output out;
};

int run_private_rate(const PrivateRateArgs& a) {
  qdecay::PrivateRateConfig cfg;
  cfg.p = a.p;
  cfg.lambda = a.lambda;
  cfg.noise = qdecay::noise_from_string(a.noise);
  cfg.theta_grid = qdecay::private_rate_default_grid();
  try {
    cfg.validate();
  } catch (const std::logic_error& e) {
    throw UsageError(e.what());
  }
  const qdecay::SweepResult r = qdecay::private_rate_lower_bound(cfg);
  warn(r.warnings);
  emit(a.out, render(a.out, r));
  const auto& m = r.metadata;
  std::fprintf(stderr, "max bound %.17g at theta %.17g (%s)\n", m["maxBound"].get<double>(),
               m["argmaxTheta"].get<double>(),
               m["positive"].get<bool>() ? "positive" : "not positive");
  return kExitOk;
}

struct FragilityArgs {
  std::string group = "pauli-z";
  double t = 0.01;
  double theta_min = 1e-6;
  double theta_max = 1e-2;
  std::size_t points = 5;
  Output out;
};

int run_group_fragility(const FragilityArgs& a) {
  qdecay::GroupLindbladian g;
  const qdecay::ComplexMatrix id = qdecay::ComplexMatrix::Identity(2, 2);
  if (a.group == "pauli-z") {
    g.unitaries = {id, qdecay::pauli_z()};
    g.probs = {0.0, 1.0};
  } else {
    g.unitaries = {qdecay::pauli_x(), qdecay::pauli_y(), qdecay::pauli_z()};
    g.probs = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  }
  if (!(a.t > 0.0)) throw UsageError("--t must be positive");
  std::vector<double> grid;
  try {
    grid = qdecay::log_grid(a.theta_max, a.theta_min, a.points);
  } catch (const std::logic_error& e) {
    throw UsageError(e.what());
  }
  const qdecay::SweepResult r = qdecay::group_fragility_demo(g, a.t, grid);
  warn(r.warnings);
  emit(a.out, render(a.out, r));
  return kExitOk;
}

struct ExpansionArgs {
  double theta = 1e-4;
  double lambda = 0.1;
  std::size_t dim = 2;
  Output out;
};

int run_expansion(const ExpansionArgs& a) {
  if (!(a.theta > 0.0 && a.theta <= 1e-3)) throw UsageError("--theta must be in (0, 1e-3]");
  if (!(a.lambda > 0.0 && a.lambda <= 1.0)) throw UsageError("--lambda must be in (0, 1]");
  if (a.dim < 2) throw UsageError("--dim must be >= 2");
  const qdecay::ExpansionReport r = qdecay::expansion_consistency_check(a.theta, a.lambda, a.dim);
  emit(a.out, r.to_json().dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical companion for relative-entropy decay bounds under quantum Markov "
               "semigroups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", qdecay::kVersion);

  SuddenDecayArgs sd;
  CLI::App* c_sd = app.add_subcommand("sudden-decay", "Pre/post-noise relative entropy sweep");
  c_sd->add_option("--lambda", sd.lambda, "Noise strength")->capture_default_str();
  c_sd->add_option("--theta-min", sd.theta_min, "Smallest angle")->capture_default_str();
  c_sd->add_option("--theta-max", sd.theta_max, "Largest angle")->capture_default_str();
  c_sd->add_option("--points", sd.points, "Grid points")->capture_default_str()
      ->check(CLI::PositiveNumber);
  c_sd->add_option("--dim", sd.dim, "Hilbert space dimension")->capture_default_str();
  c_sd->add_option("--noise", sd.noise, "Noise channel")
      ->capture_default_str()
      ->check(CLI::IsMember({"depolarizing", "dephasing-y"}));
  add_output(c_sd, sd.out);

  GTableArgs gt;
  CLI::App* c_gt = app.add_subcommand("g-table", "Optimized g factor per time");
  c_gt->add_option("--t", gt.t, "Comma-separated times")->required();
  c_gt->add_option("--variant", gt.variant, "Objective variant")
      ->capture_default_str()
      ->check(CLI::IsMember({"paper-example", "theorem"}));
  c_gt->add_option("--c", gt.c, "Pimsner-Popa index")->capture_default_str();
  c_gt->add_option("--diamond", gt.diamond, "Diamond-norm constant")->capture_default_str();
  add_output(c_gt, gt.out);

  VerifyArgs vf;
  CLI::App* c_vf = app.add_subcommand("verify", "Randomized inequality suites (JSON report)");
  c_vf->add_option("--suite", vf.suite, "Suite name or 'all'")->capture_default_str();
  c_vf->add_option("--samples", vf.samples, "Samples per suite")->capture_default_str();
  CLI::Option* seed_opt =
      c_vf->add_option("--seed", vf.seed, "Root seed (fallback: QDECAY_SEED, then 0)");
  add_output(c_vf, vf.out, /*json_only=*/true);

  PrivateRateArgs pr;
  CLI::App* c_pr = app.add_subcommand("private-rate", "Single-letter private-rate lower bound");
  c_pr->add_option("--p", pr.p, "Weight of the kept branch, in (0, 1)")->capture_default_str();
  c_pr->add_option("--lambda", pr.lambda, "Noise strength, in (0, 1)")->capture_default_str();
  c_pr->add_option("--noise", pr.noise, "Noise channel")
      ->capture_default_str()
      ->check(CLI::IsMember({"depolarizing", "dephasing-y"}));
  add_output(c_pr, pr.out);

  FragilityArgs fg;
  CLI::App* c_fg = app.add_subcommand("group-fragility", "Mutual-information decay ratio sweep");
  c_fg->add_option("--group", fg.group, "Unitary ensemble")
      ->capture_default_str()
      ->check(CLI::IsMember({"pauli-z", "pauli-xyz"}));
  c_fg->add_option("--t", fg.t, "Time")->capture_default_str();
  c_fg->add_option("--theta-min", fg.theta_min, "Smallest angle")->capture_default_str();
  c_fg->add_option("--theta-max", fg.theta_max, "Largest angle")->capture_default_str();
  c_fg->add_option("--points", fg.points, "Grid points")->capture_default_str()
      ->check(CLI::PositiveNumber);
  add_output(c_fg, fg.out);

  ExpansionArgs ex;
  CLI::App* c_ex = app.add_subcommand("expansion-check", "Small-angle expansion comparison (JSON)");
  c_ex->add_option("--theta", ex.theta, "Angle, at most 1e-3")->capture_default_str();
  c_ex->add_option("--lambda", ex.lambda, "Noise strength")->capture_default_str();
  c_ex->add_option("--dim", ex.dim, "Hilbert space dimension")->capture_default_str();
  add_output(c_ex, ex.out, /*json_only=*/true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c_sd->parsed()) return run_sudden_decay(sd);
    if (c_gt->parsed()) return run_g_table(gt);
    if (c_vf->parsed()) {
      vf.seed_given = seed_opt->count() > 0;
      return run_verify(vf);
    }
    if (c_pr->parsed()) return run_private_rate(pr);
    if (c_fg->parsed()) return run_group_fragility(fg);
    if (c_ex->parsed()) return run_expansion(ex);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
