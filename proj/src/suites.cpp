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

#include "qdecay/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "qdecay/bounds.hpp"
#include "qdecay/channels.hpp"
#include "qdecay/entropy.hpp"
#include "qdecay/experiments.hpp"
#include "qdecay/random.hpp"

namespace qdecay {

namespace {

constexpr std::size_t kMaxFailuresKept = 20;
constexpr int kMaxRedraws = 200;
// Rate of the weak replacement generator used by the classical suites.
constexpr double kClassicalRate = 1e-3;

class Recorder {
 public:
  explicit Recorder(SuiteResult& r) : r_(r) {}

  void set_counter(std::uint64_t c) { counter_ = c; }

  void check(const std::string& what, double slack, double tol = kBoundSlack,
             const std::string& detail = {}) {
    ++r_.checks;
    if (r_.checks == 1 || slack < r_.worst_slack) r_.worst_slack = slack;
    if (slack < -tol || std::isnan(slack)) fail(what, slack, detail);
  }

  void report(const BoundReport& b, const std::string& what) {
    check(what, b.slack(), kBoundSlack, b.bound);
  }

  void error(const std::string& what, const std::string& msg) { fail(what, -1.0, "error: " + msg); }

 private:
  void fail(const std::string& what, double slack, const std::string& detail) {
    ++r_.violations;
    if (r_.failures.size() < kMaxFailuresKept) r_.failures.push_back({counter_, what, slack, detail});
  }

  SuiteResult& r_;
  std::uint64_t counter_ = 0;
};

std::size_t pick_dim(CounterRng& rng, std::size_t lo, std::size_t hi) {
  return lo + rng.below(hi - lo + 1);
}

DensityMatrix commuting_partner(const ComplexMatrix& basis, CounterRng& rng) {
  return density_in_basis(basis, random_simplex(static_cast<std::size_t>(basis.rows()), rng));
}

// ------------------------------------------------------------------ suites

void suite_pinsker(Recorder& rec, CounterRng& rng) {
  const std::size_t d = pick_dim(rng, 2, 4);
  const ComplexMatrix u = haar_unitary(d, rng);
  const DensityMatrix rho = commuting_partner(u, rng);
  const DensityMatrix sigma = commuting_partner(u, rng);
  const PinskerReport c = pinsker_check(rho, sigma);
  rec.check("commuting/pinsker", c.relative_entropy - c.pinsker_bound, kPinskerSlack);
  rec.check("commuting/refined", c.relative_entropy - c.refined_bound, kPinskerSlack);
  const DensityMatrix a = random_density_hs(d, rng);
  const DensityMatrix b = random_density_hs(d, rng);
  const PinskerReport n = pinsker_check(a, b);
  rec.check("noncommuting/pinsker", n.relative_entropy - n.pinsker_bound, kPinskerSlack);
}

void suite_almost_concavity(Recorder& rec, CounterRng& rng) {
  const std::size_t d = pick_dim(rng, 2, 4);
  const ComplexMatrix u = haar_unitary(d, rng);
  const std::vector<double> s1 = random_simplex(d, rng);
  const std::vector<double> s2 = random_simplex(d, rng);
  const DensityMatrix r1 = commuting_partner(u, rng);
  const DensityMatrix r2 = commuting_partner(u, rng);
  const DensityMatrix sg1 = density_in_basis(u, s1);
  const DensityMatrix sg2 = density_in_basis(u, s2);
  const double p = rng.uniform_open();
  const double m = std::min(1.0, std::min(*std::min_element(s1.begin(), s1.end()),
                                          *std::min_element(s2.begin(), s2.end())));
  const double lhs = relative_entropy(mix(r2, r1, p), mix(sg2, sg1, p)).value;
  const double rhs = p * relative_entropy(r1, sg1).value +
                     (1.0 - p) * relative_entropy(r2, sg2).value - f_almost_concavity(p, m);
  rec.check("subtraction-reading", lhs - rhs);
}

struct ClsiContext {
  Lindbladian bare = depolarizing_lindbladian(2, 0.75);
  Lindbladian ext = extend_with_auxiliary(bare, 2);
  std::vector<double> times{1e-3, 1e-2, 1e-1, 1.0};
  std::vector<SuperOperator> bare_prop;
  std::vector<SuperOperator> ext_prop;
  ClsiContext() {
    for (double t : times) {
      bare_prop.push_back(bare.propagator(t));
      ext_prop.push_back(ext.propagator(t));
    }
  }
};

const ClsiContext& clsi_context() {
  static const ClsiContext ctx;
  return ctx;
}

void suite_clsi(Recorder& rec, CounterRng& rng) {
  const ClsiContext& ctx = clsi_context();
  const DensityMatrix rho = random_density_hs(2, rng);
  const DensityMatrix rho_ext = random_density_hs(4, rng);
  for (std::size_t k = 0; k < ctx.times.size(); ++k) {
    const double t = ctx.times[k];
    rec.report(clsi_converse_check(ctx.bare, ctx.bare_prop[k], rho, t), "bare");
    rec.report(clsi_converse_check(ctx.ext, ctx.ext_prop[k], rho_ext, t), "aux-extension");
  }
}

void suite_clsi_example(Recorder& rec, CounterRng& rng) {
  const ClsiContext& ctx = clsi_context();
  const DensityMatrix rho = random_density_hs(2, rng);
  const DensityMatrix rho_ext = random_density_hs(4, rng);
  for (std::size_t k = 0; k < ctx.times.size(); ++k) {
    const double t = ctx.times[k];
    rec.report(clsi_converse_check(ctx.bare, ctx.bare_prop[k], rho, t, GVariant::kWorkedExample),
               "bare");
    rec.report(
        clsi_converse_check(ctx.ext, ctx.ext_prop[k], rho_ext, t, GVariant::kWorkedExample),
        "aux-extension");
  }
}

// Classical setting: diagonal states, E a block expectation in the
// computational basis. `blocks` lists block sizes (all with B = 1).
struct ClassicalSetup {
  std::vector<std::size_t> blocks;
  ConditionalExpectation e;
  Lindbladian l;
};

ConditionalExpectation diagonal_block_expectation(const std::vector<std::size_t>& sizes) {
  std::size_t d = 0;
  for (auto s : sizes) d += s;
  const ComplexMatrix id = ComplexMatrix::Identity(static_cast<Eigen::Index>(d),
                                                   static_cast<Eigen::Index>(d));
  std::vector<Block> bl;
  std::size_t at = 0;
  for (auto s : sizes) {
    bl.push_back({id.middleCols(static_cast<Eigen::Index>(at), static_cast<Eigen::Index>(s)), 1, s});
    at += s;
  }
  return ConditionalExpectation(std::move(bl));
}

const std::vector<ClassicalSetup>& classical_setups() {
  static const std::vector<ClassicalSetup> s = [] {
    std::vector<ClassicalSetup> v;
    for (const std::vector<std::size_t>& sizes :
         {std::vector<std::size_t>{2}, std::vector<std::size_t>{2, 2}}) {
      ConditionalExpectation e = diagonal_block_expectation(sizes);
      Lindbladian l = replacement_lindbladian(e, kClassicalRate);
      v.push_back({sizes, std::move(e), std::move(l)});
    }
    return v;
  }();
  return s;
}

// Simplex draw pulled toward the flat distribution by a uniform weight, so
// that a useful fraction of draws clears the m~ feasibility threshold.
std::vector<double> tempered_simplex(std::size_t d, CounterRng& rng) {
  std::vector<double> q = random_simplex(d, rng);
  const double s = rng.uniform();
  for (double& x : q) x = (1.0 - s) / static_cast<double>(d) + s * x;
  return q;
}

// sigma with full support; rho either a fresh draw with the same block
// masses or a small perturbation of sigma (reaches the small-D branch).
std::pair<std::vector<double>, std::vector<double>> classical_pair(
    const std::vector<std::size_t>& blocks, CounterRng& rng) {
  std::size_t d = 0;
  for (auto s : blocks) d += s;
  const std::vector<double> sigma = tempered_simplex(d, rng);
  std::vector<double> rho(d);
  const bool perturb = rng.uniform() < 0.5;
  const double eta = std::pow(10.0, -1.0 - 3.0 * rng.uniform());
  std::size_t at = 0;
  for (auto s : blocks) {
    double mass = 0.0;
    for (std::size_t i = at; i < at + s; ++i) mass += sigma[i];
    if (perturb) {
      std::vector<double> x(s);
      double mean = 0.0;
      for (std::size_t i = 0; i < s; ++i) {
        x[i] = 2.0 * rng.uniform() - 1.0;
        mean += sigma[at + i] * x[i];
      }
      mean /= mass;
      for (std::size_t i = 0; i < s; ++i)
        rho[at + i] = sigma[at + i] * (1.0 + eta * (x[i] - mean));
    } else {
      const std::vector<double> q = random_simplex(s, rng);
      for (std::size_t i = 0; i < s; ++i) rho[at + i] = mass * q[i];
    }
    at += s;
  }
  return {rho, sigma};
}

void suite_classical(Recorder& rec, CounterRng& rng, SuiteResult& res) {
  const auto& setups = classical_setups();
  const ClassicalSetup& s = setups[rng.below(setups.size())];
  for (double t : {0.01, 0.1}) {
    ConverseBoundParams p;
    p.t = t;
    p.c = s.l.pp_index();
    p.diamond = s.l.diamond_norm_upper();
    const double eps = ConverseBoundParams::eps_for(t, p.c, p.diamond);
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
      auto [rv, sv] = classical_pair(s.blocks, rng);
      const double msig = *std::min_element(sv.begin(), sv.end());
      // E(sigma) restricted to supp(sigma) has the block averages as spectrum.
      double m = std::min(1.0, msig);
      std::size_t at = 0;
      for (auto b : s.blocks) {
        double mass = 0.0;
        for (std::size_t i = at; i < at + b; ++i) mass += sv[i];
        m = std::min(m, mass / static_cast<double>(b));
        at += b;
      }
      if (classical_a_min(eps, m) >= 1.0) {
        ++res.rejected;
        continue;
      }
      const DensityMatrix rho = DensityMatrix::diagonal(rv);
      const DensityMatrix sigma = DensityMatrix::diagonal(sv);
      const BoundReport r = classical_converse_check(s.e, rho, sigma, p);
      rec.report(r, "replacement");
      // The semigroup itself puts weight 1 - e^{-rate t} <= eps on E.
      const SuperOperator phi = s.l.propagator(t);
      const double semi = relative_entropy(phi.apply(rho), phi.apply(sigma)).value;
      rec.check("semigroup", semi - r.rhs);
      break;
    }
  }
}

void suite_mutual_info(Recorder& rec, CounterRng& rng, SuiteResult& res) {
  static const Lindbladian l = replacement_lindbladian(depolarizing_projection(2), kClassicalRate);
  for (double t : {0.01, 0.1}) {
    const double eps = ConverseBoundParams::eps_for(t, l.pp_index(), l.diamond_norm_upper());
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
      std::vector<double> joint = tempered_simplex(4, rng);
      if (rng.uniform() < 0.5) {
        // Near-product joint distribution.
        const std::vector<double> pa = tempered_simplex(2, rng);
        const std::vector<double> pb = tempered_simplex(2, rng);
        const double eta = std::pow(10.0, -1.0 - 3.0 * rng.uniform());
        const double x = eta * (2.0 * rng.uniform() - 1.0) * std::min(pa[0], pa[1]) *
                         std::min(pb[0], pb[1]);
        joint = {pa[0] * pb[0] + x, pa[0] * pb[1] - x, pa[1] * pb[0] - x, pa[1] * pb[1] + x};
      }
      // m~ is the smallest entry of rho^A (x) rho^B (x) {1, 1/2 (sum over b)}.
      const double a0 = joint[0] + joint[1], a1 = joint[2] + joint[3];
      const double b0 = joint[0] + joint[2], b1 = joint[1] + joint[3];
      const double m = std::min({a0 * b0, a0 * b1, a1 * b0, a1 * b1, 0.5 * a0, 0.5 * a1});
      if (classical_a_min(eps, m) >= 1.0) {
        ++res.rejected;
        continue;
      }
      const BipartiteDensity rho(2, 2, DensityMatrix::diagonal(joint));
      rec.report(mutual_info_converse_check(l, rho, t), "replacement");
      break;
    }
  }
}

void suite_integral_form(Recorder& rec, CounterRng& rng) {
  for (std::size_t d : {2, 3}) {
    const DensityMatrix rho = random_density_hs(d, rng);
    const DensityMatrix sigma = random_density_hs(d, rng);
    const double diff =
        std::abs(relative_entropy_integral_form(rho, sigma, 64) - relative_entropy(rho, sigma).value);
    rec.check(d == 2 ? "dim2" : "dim3", 1e-6 - diff, 0.0);
  }
}

void suite_gaorouze(Recorder& rec, CounterRng& rng) {
  const std::size_t d = pick_dim(rng, 2, 3);
  const DensityMatrix sigma = random_density_hs(d, rng);
  const DensityMatrix rho = rng.uniform() < 0.5
                                ? random_density_hs(d, rng)
                                : mix(sigma, DensityMatrix::maximally_mixed(d), 0.1);
  const SandwichReport s = gaorouze_sandwich_check(rho, sigma);
  rec.check("lower", s.lower_slack);
  rec.check("upper", s.upper_slack);
}

void suite_normcomp(Recorder& rec, CounterRng& rng) {
  const std::size_t d = pick_dim(rng, 2, 4);
  const DensityMatrix sigma = random_density_hs(d, rng);
  const DensityMatrix omega = random_density_hs(d, rng);
  const double c = loewner_min_coefficient(sigma, omega).value;
  const HermitianMatrix x = random_hermitian(d, rng);
  const double lhs = weighted_norm_sq(x, omega).value;
  const double rhs = c * weighted_norm_sq(x, sigma).value;
  rec.check("sigma<=c*omega", (rhs - lhs) / std::max(1.0, rhs));
}

void suite_origcompare(Recorder& rec, CounterRng& rng) {
  const std::size_t d = pick_dim(rng, 2, 3);
  const DensityMatrix rho = random_density_hs(d, rng);
  const DensityMatrix sigma = random_density_hs(d, rng);
  const DensityMatrix omega = rng.uniform() < 0.5 ? random_density_hs(d, rng) : sigma;
  // Tightest zeta with rho >= (1 - zeta) sigma.
  const double g = loewner_min_coefficient(sigma, rho).value;
  const double zeta = std::max(0.0, 1.0 - 1.0 / g) * (1.0 + 1e-12);
  const double eps = 0.5 * rng.uniform();
  rec.report(origcompare_check(rho, sigma, omega, eps, std::min(zeta, 1.0 - 1e-15)), "random");
}

void suite_decayed_state(Recorder& rec, CounterRng& rng) {
  {
    const DensityMatrix rho = random_density_hs(2, rng);
    const DensityMatrix sigma = random_density_hs(2, rng);
    const DensityMatrix mm = DensityMatrix::maximally_mixed(2);
    const double eps = 0.9 * rng.uniform_open();
    const double zeta = eps * rng.uniform();
    rec.report(decayed_state_bound_check(rho, sigma, mm, mm, eps, zeta, 1.0), "theta=omega=I/2");
  }
  {
    const std::size_t d = pick_dim(rng, 2, 3);
    const DensityMatrix rho = random_density_hs(d, rng);
    const DensityMatrix sigma = random_density_hs(d, rng);
    const DensityMatrix theta = random_density_hs(d, rng);
    const DensityMatrix omega = random_density_hs(d, rng);
    const double c = loewner_min_coefficient(theta, omega).value * (1.0 + 1e-12);
    const double eps = 0.9 * rng.uniform_open();
    const double zeta = eps * rng.uniform();
    rec.report(decayed_state_bound_check(rho, sigma, theta, omega, eps, zeta, c), "random");
  }
}

void suite_data_processing(Recorder& rec, CounterRng& rng) {
  const std::size_t d = pick_dim(rng, 2, 3);
  const double lambda = rng.uniform();
  std::vector<std::pair<std::string, SuperOperator>> chans;
  chans.emplace_back("depolarizing", SuperOperator::from_kraus(depolarizing(d, lambda)));
  chans.emplace_back("dephasing",
                     SuperOperator::from_kraus(dephasing(haar_unitary(d, rng), lambda)));
  chans.emplace_back("pinching", pinching(haar_unitary(d, rng)).superop());
  chans.emplace_back("complement", SuperOperator::from_kraus(complementary_channel(depolarizing(d, lambda))));
  const DensityMatrix rho = random_density_hs(d, rng);
  const DensityMatrix sigma = random_density_hs(d, rng);
  const double d0 = relative_entropy(rho, sigma).value;
  for (const auto& [name, phi] : chans)
    rec.check(name, d0 - relative_entropy(phi.apply(rho), phi.apply(sigma)).value);
  // Qubit channels.
  const DensityMatrix r2 = random_density_hs(2, rng);
  const DensityMatrix s2 = random_density_hs(2, rng);
  const double d2 = relative_entropy(r2, s2).value;
  const KrausChannel y = dephasing_y(lambda);
  rec.check("dephasing-y", d2 - relative_entropy(y.apply(r2), y.apply(s2)).value);
  const KrausChannel f = flagged_channel(lambda, rng.uniform());
  rec.check("flagged", d2 - relative_entropy(f.apply(r2), f.apply(s2)).value);
}

using SuiteFn = std::function<void(Recorder&, CounterRng&, SuiteResult&)>;

const std::map<std::string, SuiteFn>& suite_table() {
  static const std::map<std::string, SuiteFn> t = {
      {"pinsker", [](Recorder& r, CounterRng& g, SuiteResult&) { suite_pinsker(r, g); }},
      {"almost-concavity",
       [](Recorder& r, CounterRng& g, SuiteResult&) { suite_almost_concavity(r, g); }},
      {"clsi-converse", [](Recorder& r, CounterRng& g, SuiteResult&) { suite_clsi(r, g); }},
      {"clsi-converse-example",
       [](Recorder& r, CounterRng& g, SuiteResult&) { suite_clsi_example(r, g); }},
      {"classical-converse", suite_classical},
      {"mutual-info-converse", suite_mutual_info},
      {"integral-form",
       [](Recorder& r, CounterRng& g, SuiteResult&) { suite_integral_form(r, g); }},
      {"gaorouze", [](Recorder& r, CounterRng& g, SuiteResult&) { suite_gaorouze(r, g); }},
      {"normcomp", [](Recorder& r, CounterRng& g, SuiteResult&) { suite_normcomp(r, g); }},
      {"origcompare", [](Recorder& r, CounterRng& g, SuiteResult&) { suite_origcompare(r, g); }},
      {"decayed-state",
       [](Recorder& r, CounterRng& g, SuiteResult&) { suite_decayed_state(r, g); }},
      {"data-processing",
       [](Recorder& r, CounterRng& g, SuiteResult&) { suite_data_processing(r, g); }},
  };
  return t;
}

}  // namespace

nlohmann::json SuiteResult::to_json() const {
  nlohmann::json fails = nlohmann::json::array();
  for (const auto& f : failures)
    fails.push_back(
        {{"counter", f.counter}, {"check", f.check}, {"slack", f.slack}, {"detail", f.detail}});
  return {{"name", name},         {"samples", samples},      {"checks", checks},
          {"violations", violations}, {"rejectedDraws", rejected}, {"worstSlack", worst_slack},
          {"pass", pass()},       {"failures", fails}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, fn] : suite_table()) v.push_back(k);
    return v;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, std::size_t samples, std::uint64_t seed) {
  const auto& table = suite_table();
  const auto it = table.find(name);
  if (it == table.end()) throw std::invalid_argument("unknown suite: " + name);
  SuiteResult res;
  res.name = name;
  res.samples = samples;
  Recorder rec(res);
  const std::uint64_t stream = stream_id(name);
  for (std::size_t i = 0; i < samples; ++i) {
    rec.set_counter(i);
    CounterRng rng(derive_seed(seed, stream, i));
    try {
      it->second(rec, rng, res);
    } catch (const std::exception& e) {
      rec.error("sample", e.what());
    }
  }
  return res;
}

nlohmann::json run_verify(const std::string& selector, std::size_t samples, std::uint64_t seed) {
  std::vector<std::string> names;
  if (selector == "all")
    names = suite_names();
  else
    names.push_back(selector);
  nlohmann::json suites = nlohmann::json::array();
  std::size_t violations = 0;
  for (const auto& n : names) {
    const SuiteResult r = run_suite(n, samples, seed);
    violations += r.violations;
    suites.push_back(r.to_json());
  }
  return {{"tool", "qdecay"},
          {"version", kVersion},
          {"command", "verify"},
          {"suite", selector},
          {"samples", samples},
          {"seed", seed},
          {"suites", suites},
          {"totalViolations", violations},
          {"pass", violations == 0}};
}

}  // namespace qdecay
