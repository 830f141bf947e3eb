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

#include "qdecay/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qdecay/random.hpp"

namespace qdecay {

namespace {

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

ComplexVector vec(const ComplexMatrix& x) {
  return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

ComplexMatrix unvec(const ComplexVector& v, std::size_t rows, std::size_t cols) {
  return Eigen::Map<const ComplexMatrix>(v.data(), idx(rows), idx(cols));
}

double max_col_abs_sum(const ComplexMatrix& a) {
  double r = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) r = std::max(r, a.col(j).cwiseAbs().sum());
  return r;
}

// Enforces Hermiticity for outputs of Hermiticity-preserving maps.
ComplexMatrix hermitize(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

// ---------------------------------------------------------------- Kraus

KrausChannel::KrausChannel(std::size_t dim_in, std::size_t dim_out,
                           std::vector<ComplexMatrix> kraus)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw std::invalid_argument("KrausChannel: no Kraus operators");
  ComplexMatrix s = ComplexMatrix::Zero(idx(dim_in), idx(dim_in));
  for (const auto& k : kraus_) {
    if (k.rows() != idx(dim_out) || k.cols() != idx(dim_in))
      throw std::invalid_argument("KrausChannel: Kraus operator has wrong shape");
    s += k.adjoint() * k;
  }
  const double dev = max_abs_entry(s - ComplexMatrix::Identity(idx(dim_in), idx(dim_in)));
  if (dev > kHermitianTol) {
    std::ostringstream os;
    os << "KrausChannel: not trace preserving (deviation " << dev << ")";
    throw std::invalid_argument(os.str());
  }
}

KrausChannel KrausChannel::identity(std::size_t d) {
  return KrausChannel(d, d, {ComplexMatrix::Identity(idx(d), idx(d))});
}

KrausChannel KrausChannel::unitary(const ComplexMatrix& u) {
  return KrausChannel(static_cast<std::size_t>(u.cols()),
                      static_cast<std::size_t>(u.rows()), {u});
}

ComplexMatrix KrausChannel::apply(const ComplexMatrix& x) const {
  if (x.rows() != idx(dim_in_) || x.cols() != idx(dim_in_))
    throw std::invalid_argument("KrausChannel::apply: dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(idx(dim_out_), idx(dim_out_));
  for (const auto& k : kraus_) out += k * x * k.adjoint();
  return out;
}

DensityMatrix KrausChannel::apply(const DensityMatrix& rho) const {
  return DensityMatrix(hermitize(apply(rho.matrix())));
}

// ---------------------------------------------------------- SuperOperator

SuperOperator::SuperOperator(std::size_t dim_in, std::size_t dim_out, ComplexMatrix m)
    : dim_in_(dim_in), dim_out_(dim_out), m_(std::move(m)) {
  if (m_.rows() != idx(dim_out * dim_out) || m_.cols() != idx(dim_in * dim_in))
    throw std::invalid_argument("SuperOperator: matrix shape does not match dimensions");
}

SuperOperator SuperOperator::identity(std::size_t d) {
  return SuperOperator(d, d, ComplexMatrix::Identity(idx(d * d), idx(d * d)));
}

SuperOperator SuperOperator::from_kraus(const KrausChannel& k) {
  const std::size_t di = k.dim_in();
  const std::size_t dout = k.dim_out();
  ComplexMatrix m = ComplexMatrix::Zero(idx(dout * dout), idx(di * di));
  for (const auto& op : k.kraus()) m += tensor(op.conjugate(), op);
  return SuperOperator(di, dout, std::move(m));
}

ComplexMatrix SuperOperator::apply(const ComplexMatrix& x) const {
  if (x.rows() != idx(dim_in_) || x.cols() != idx(dim_in_))
    throw std::invalid_argument("SuperOperator::apply: dimension mismatch");
  return unvec(m_ * vec(x), dim_out_, dim_out_);
}

DensityMatrix SuperOperator::apply(const DensityMatrix& rho) const {
  return DensityMatrix(hermitize(apply(rho.matrix())));
}

SuperOperator SuperOperator::compose(const SuperOperator& inner) const {
  if (inner.dim_out() != dim_in_)
    throw std::invalid_argument("SuperOperator::compose: dimension mismatch");
  return SuperOperator(inner.dim_in(), dim_out_, m_ * inner.matrix());
}

SuperOperator operator+(const SuperOperator& a, const SuperOperator& b) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out())
    throw std::invalid_argument("SuperOperator +: dimension mismatch");
  return SuperOperator(a.dim_in(), a.dim_out(), a.matrix() + b.matrix());
}

SuperOperator operator-(const SuperOperator& a, const SuperOperator& b) {
  return a + (-1.0) * b;
}

SuperOperator operator*(double s, const SuperOperator& a) {
  return SuperOperator(a.dim_in(), a.dim_out(), s * a.matrix());
}

SuperOperator tensor_superop(const SuperOperator& a, const SuperOperator& b) {
  const std::size_t ai = a.dim_in(), ao = a.dim_out();
  const std::size_t bi = b.dim_in(), bo = b.dim_out();
  const std::size_t di = ai * bi, dout = ao * bo;
  ComplexMatrix m = ComplexMatrix::Zero(idx(dout * dout), idx(di * di));
  // Column for the basis element |i1 i2><j1 j2| is a(E_i1j1) (x) b(E_i2j2).
  for (std::size_t j1 = 0; j1 < ai; ++j1)
    for (std::size_t i1 = 0; i1 < ai; ++i1) {
      const ComplexMatrix ya = a.apply(ket_bra(ai, i1, j1));
      for (std::size_t j2 = 0; j2 < bi; ++j2)
        for (std::size_t i2 = 0; i2 < bi; ++i2) {
          const ComplexMatrix y = tensor(ya, b.apply(ket_bra(bi, i2, j2)));
          const std::size_t row = i1 * bi + i2;
          const std::size_t col = j1 * bi + j2;
          m.col(idx(row + col * di)) = vec(y);
        }
    }
  return SuperOperator(di, dout, std::move(m));
}

// ------------------------------------------------- ConditionalExpectation

namespace {

ComplexMatrix apply_blocks(const std::vector<Block>& blocks, const ComplexMatrix& x) {
  ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
  for (const auto& bl : blocks) {
    const ComplexMatrix y = bl.isometry.adjoint() * x * bl.isometry;
    const ComplexMatrix yb = partial_trace(y, bl.dim_b, bl.dim_c, Subsystem::A);
    const ComplexMatrix ic =
        ComplexMatrix::Identity(idx(bl.dim_c), idx(bl.dim_c)) / static_cast<double>(bl.dim_c);
    out += bl.isometry * tensor(yb, ic) * bl.isometry.adjoint();
  }
  return out;
}

void check_idempotent_tp(const SuperOperator& s, const char* who) {
  const std::size_t d = s.dim_in();
  if (s.dim_out() != d) throw std::invalid_argument(std::string(who) + ": not square");
  const ComplexMatrix& m = s.matrix();
  const double idem = max_abs_entry(m * m - m);
  if (idem > kHermitianTol) {
    std::ostringstream os;
    os << who << ": not idempotent (deviation " << idem << ")";
    throw std::invalid_argument(os.str());
  }
  // Trace functional in column stacking: sum_i row (i + i d).
  Eigen::RowVectorXcd tr = Eigen::RowVectorXcd::Zero(idx(d * d));
  for (std::size_t i = 0; i < d; ++i) tr[idx(i + i * d)] = 1.0;
  const double tp = (tr * m - tr).cwiseAbs().maxCoeff();
  if (tp > kHermitianTol) {
    std::ostringstream os;
    os << who << ": not trace preserving (deviation " << tp << ")";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

ConditionalExpectation::ConditionalExpectation(std::vector<Block> blocks)
    : blocks_(std::move(blocks)), superop_(SuperOperator::identity(1)) {
  if (blocks_.empty()) throw std::invalid_argument("ConditionalExpectation: no blocks");
  const Eigen::Index d = blocks_.front().isometry.rows();
  Eigen::Index total = 0;
  for (const auto& bl : blocks_) {
    if (bl.isometry.rows() != d || bl.isometry.cols() != idx(bl.dim_b * bl.dim_c) ||
        bl.dim_b == 0 || bl.dim_c == 0)
      throw std::invalid_argument("ConditionalExpectation: block shape mismatch");
    total += bl.isometry.cols();
  }
  if (total != d)
    throw std::invalid_argument("ConditionalExpectation: blocks do not cover the space");
  ComplexMatrix all(d, d);
  Eigen::Index at = 0;
  for (const auto& bl : blocks_) {
    all.middleCols(at, bl.isometry.cols()) = bl.isometry;
    at += bl.isometry.cols();
  }
  if (max_abs_entry(all.adjoint() * all - ComplexMatrix::Identity(d, d)) > kHermitianTol)
    throw std::invalid_argument("ConditionalExpectation: blocks are not orthonormal");

  const auto du = static_cast<std::size_t>(d);
  ComplexMatrix m(d * d, d * d);
  for (std::size_t j = 0; j < du; ++j)
    for (std::size_t i = 0; i < du; ++i)
      m.col(idx(i + j * du)) = vec(apply_blocks(blocks_, ket_bra(du, i, j)));
  superop_ = SuperOperator(du, du, std::move(m));
  check_idempotent_tp(superop_, "ConditionalExpectation");
}

ConditionalExpectation ConditionalExpectation::from_superop(SuperOperator s) {
  check_idempotent_tp(s, "ConditionalExpectation::from_superop");
  return ConditionalExpectation(std::move(s));
}

ConditionalExpectation pinching(const ComplexMatrix& basis) {
  const Eigen::Index d = basis.rows();
  if (basis.cols() != d ||
      max_abs_entry(basis.adjoint() * basis - ComplexMatrix::Identity(d, d)) > kHermitianTol)
    throw std::invalid_argument("pinching: basis is not unitary");
  std::vector<Block> blocks;
  for (Eigen::Index k = 0; k < d; ++k) blocks.push_back({basis.col(k), 1, 1});
  return ConditionalExpectation(std::move(blocks));
}

ConditionalExpectation depolarizing_projection(std::size_t d) {
  return ConditionalExpectation({Block{ComplexMatrix::Identity(idx(d), idx(d)), 1, d}});
}

ConditionalExpectation identity_projection(std::size_t d) {
  return ConditionalExpectation({Block{ComplexMatrix::Identity(idx(d), idx(d)), d, 1}});
}

// ------------------------------------------------------------ Lindbladian

ComplexMatrix superop_exponential(const ComplexMatrix& a) {
  const Eigen::Index n = a.rows();
  const double norm = max_col_abs_sum(a);
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const ComplexMatrix b = a / std::ldexp(1.0, squarings);
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  ComplexMatrix t = id;
  for (int k = 12; k >= 1; --k) t = id + (b * t) / static_cast<double>(k);
  for (int s = 0; s < squarings; ++s) t = t * t;
  return t;
}

Lindbladian::Lindbladian(SuperOperator generator, ConditionalExpectation fixed_point,
                         double diamond_norm_upper, double pp_index)
    : generator_(std::move(generator)),
      fixed_point_(std::move(fixed_point)),
      diamond_(diamond_norm_upper),
      pp_index_(pp_index) {
  const std::size_t d = generator_.dim_in();
  if (generator_.dim_out() != d || fixed_point_.dim() != d)
    throw std::invalid_argument("Lindbladian: dimension mismatch");
  if (!(diamond_ > 0.0)) throw std::invalid_argument("Lindbladian: diamond bound must be > 0");
  if (!(pp_index_ >= 1.0 - 1e-9)) throw std::invalid_argument("Lindbladian: index below 1");
  Eigen::RowVectorXcd tr = Eigen::RowVectorXcd::Zero(idx(d * d));
  for (std::size_t i = 0; i < d; ++i) tr[idx(i + i * d)] = 1.0;
  const double scale = std::max(1.0, max_abs_entry(generator_.matrix()));
  if ((tr * generator_.matrix()).cwiseAbs().maxCoeff() > kHermitianTol * scale)
    throw std::invalid_argument("Lindbladian: generator is not trace annihilating");
  const ComplexMatrix& e = fixed_point_.superop().matrix();
  const ComplexMatrix p1 = superop_exponential(-generator_.matrix());
  if (max_abs_entry(e * p1 - e) > 1e-8)
    throw std::invalid_argument("Lindbladian: E o exp(-L) != E");
}

SuperOperator Lindbladian::propagator(double t) const {
  if (!(t >= 0.0)) throw std::invalid_argument("Lindbladian::propagator: t < 0");
  return SuperOperator(dim(), dim(), superop_exponential(-t * generator_.matrix()));
}

void GroupLindbladian::validate() const {
  if (unitaries.empty() || unitaries.size() != probs.size())
    throw std::invalid_argument("GroupLindbladian: unitaries and probs differ in length");
  const Eigen::Index d = unitaries.front().rows();
  double sum = 0.0;
  bool nontrivial = false;
  for (std::size_t j = 0; j < unitaries.size(); ++j) {
    const ComplexMatrix& u = unitaries[j];
    if (u.rows() != d || u.cols() != d)
      throw std::invalid_argument("GroupLindbladian: unitary shape mismatch");
    if (max_abs_entry(u.adjoint() * u - ComplexMatrix::Identity(d, d)) > kHermitianTol)
      throw std::invalid_argument("GroupLindbladian: matrix is not unitary");
    if (!(probs[j] >= 0.0)) throw std::invalid_argument("GroupLindbladian: negative weight");
    sum += probs[j];
    // Non-trivial means not a global phase.
    const Complex ph = u(0, 0);
    const bool scalar = std::abs(std::abs(ph) - 1.0) < kHermitianTol &&
                        max_abs_entry(u - ph * ComplexMatrix::Identity(d, d)) < kHermitianTol;
    if (!scalar && probs[j] > 0.0) nontrivial = true;
  }
  if (std::abs(sum - 1.0) > kHermitianTol)
    throw std::invalid_argument("GroupLindbladian: weights do not sum to 1");
  if (!nontrivial)
    throw std::invalid_argument("GroupLindbladian: no weight on a non-identity unitary");
}

Lindbladian replacement_lindbladian(const ConditionalExpectation& e, double rate,
                                    std::optional<double> diamond_upper) {
  if (!(rate > 0.0)) throw std::invalid_argument("replacement_lindbladian: rate <= 0");
  const std::size_t d = e.dim();
  SuperOperator gen = rate * (SuperOperator::identity(d) - e.superop());
  const double c = pimsner_popa_index(e);
  return Lindbladian(std::move(gen), e, diamond_upper.value_or(2.0 * rate), c);
}

Lindbladian depolarizing_lindbladian(std::size_t d, double diamond_upper) {
  return replacement_lindbladian(depolarizing_projection(d), 1.0, diamond_upper);
}

Lindbladian group_lindbladian(const GroupLindbladian& g) {
  g.validate();
  const auto d = static_cast<std::size_t>(g.unitaries.front().rows());
  ComplexMatrix avg = ComplexMatrix::Zero(idx(d * d), idx(d * d));
  for (std::size_t j = 0; j < g.unitaries.size(); ++j) {
    const ComplexMatrix& u = g.unitaries[j];
    avg += 0.5 * g.probs[j] * (tensor(u.conjugate(), u) + tensor(u.transpose(), u.adjoint()));
  }
  SuperOperator gen(d, d, ComplexMatrix::Identity(idx(d * d), idx(d * d)) - avg);
  ConditionalExpectation e = fixed_point_projection(gen);
  const double c = pimsner_popa_index(e);
  // ||Id|| + sum_j p_j ||u . u^dagger|| = 2.
  return Lindbladian(std::move(gen), std::move(e), 2.0, c);
}

Lindbladian extend_with_auxiliary(const Lindbladian& l, std::size_t aux_dim) {
  const SuperOperator id = SuperOperator::identity(aux_dim);
  SuperOperator gen = tensor_superop(l.generator(), id);
  ConditionalExpectation e =
      ConditionalExpectation::from_superop(tensor_superop(l.fixed_point().superop(), id));
  return Lindbladian(std::move(gen), std::move(e), l.diamond_norm_upper(), l.pp_index());
}

DensityMatrix semigroup_apply(const Lindbladian& l, double t, const DensityMatrix& rho) {
  if (!(t >= 0.0)) throw std::invalid_argument("semigroup_apply: t < 0");
  if (rho.dim() != l.dim()) throw std::invalid_argument("semigroup_apply: dimension mismatch");
  if (t == 0.0) return rho;
  return l.propagator(t).apply(rho);
}

SuperOperator replacement_semigroup(const ConditionalExpectation& e, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("replacement_semigroup: t < 0");
  const double a = std::exp(-t);
  return a * SuperOperator::identity(e.dim()) + (1.0 - a) * e.superop();
}

// ----------------------------------------------------------- constructors

KrausChannel depolarizing(std::size_t d, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::domain_error("depolarizing: lambda outside [0, 1]");
  if (d < 1) throw std::invalid_argument("depolarizing: d < 1");
  // Weyl operators X^a Z^b average any input to tr(.) I/d.
  const double dd = static_cast<double>(d);
  ComplexMatrix x = ComplexMatrix::Zero(idx(d), idx(d));
  ComplexMatrix z = ComplexMatrix::Zero(idx(d), idx(d));
  for (std::size_t j = 0; j < d; ++j) {
    x(idx((j + 1) % d), idx(j)) = 1.0;
    z(idx(j), idx(j)) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / dd);
  }
  std::vector<ComplexMatrix> ks;
  ks.push_back(std::sqrt(1.0 - lambda + lambda / (dd * dd)) *
               ComplexMatrix::Identity(idx(d), idx(d)));
  if (lambda > 0.0) {
    ComplexMatrix xa = ComplexMatrix::Identity(idx(d), idx(d));
    for (std::size_t a = 0; a < d; ++a) {
      ComplexMatrix w = xa;
      for (std::size_t b = 0; b < d; ++b) {
        if (a != 0 || b != 0) ks.push_back(std::sqrt(lambda) / dd * w);
        w = w * z;
      }
      xa = xa * x;
    }
  }
  return KrausChannel(d, d, std::move(ks));
}

KrausChannel dephasing(const ComplexMatrix& basis, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::domain_error("dephasing: lambda outside [0, 1]");
  const Eigen::Index d = basis.rows();
  if (basis.cols() != d ||
      max_abs_entry(basis.adjoint() * basis - ComplexMatrix::Identity(d, d)) > kHermitianTol)
    throw std::invalid_argument("dephasing: basis is not unitary");
  std::vector<ComplexMatrix> ks;
  ks.push_back(std::sqrt(1.0 - lambda) * ComplexMatrix::Identity(d, d));
  if (lambda > 0.0)
    for (Eigen::Index k = 0; k < d; ++k)
      ks.push_back(std::sqrt(lambda) * basis.col(k) * basis.col(k).adjoint());
  const auto du = static_cast<std::size_t>(d);
  return KrausChannel(du, du, std::move(ks));
}

KrausChannel dephasing_y(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::domain_error("dephasing_y: lambda outside [0, 1]");
  // (1 - lambda) rho + lambda pinch_Y(rho) = (1 - lambda/2) rho + (lambda/2) Y rho Y.
  std::vector<ComplexMatrix> ks{std::sqrt(1.0 - 0.5 * lambda) * ComplexMatrix::Identity(2, 2)};
  if (lambda > 0.0) ks.push_back(std::sqrt(0.5 * lambda) * pauli_y());
  return KrausChannel(2, 2, std::move(ks));
}

// -------------------------------------------------------- Choi and order

HermitianMatrix choi_matrix(const SuperOperator& phi) {
  const std::size_t di = phi.dim_in();
  const std::size_t dout = phi.dim_out();
  ComplexMatrix c = ComplexMatrix::Zero(idx(dout * di), idx(dout * di));
  for (std::size_t i = 0; i < di; ++i)
    for (std::size_t j = 0; j < di; ++j) {
      const ComplexMatrix y = phi.apply(ket_bra(di, i, j));
      c += tensor(y, ket_bra(di, i, j));
    }
  return HermitianMatrix(c);
}

HermitianMatrix choi_matrix(const KrausChannel& phi) {
  return choi_matrix(SuperOperator::from_kraus(phi));
}

ExtendedReal cp_order_coefficient(const SuperOperator& phi, const SuperOperator& psi) {
  if (phi.dim_in() != psi.dim_in() || phi.dim_out() != psi.dim_out())
    throw std::invalid_argument("cp_order_coefficient: dimension mismatch");
  return loewner_min_coefficient(choi_matrix(psi), choi_matrix(phi), SupportMode::kStrict);
}

double pimsner_popa_index(const ConditionalExpectation& e) {
  const ExtendedReal c = cp_order_coefficient(e.superop(), SuperOperator::identity(e.dim()));
  if (c.is_infinite())
    throw std::logic_error("pimsner_popa_index: identity not dominated by c E");
  return c.value;
}

KrausChannel complementary_channel(const KrausChannel& phi) {
  const std::size_t nk = phi.kraus().size();
  std::vector<ComplexMatrix> fs;
  for (std::size_t i = 0; i < phi.dim_out(); ++i) {
    ComplexMatrix f(idx(nk), idx(phi.dim_in()));
    for (std::size_t k = 0; k < nk; ++k) f.row(idx(k)) = phi.kraus()[k].row(idx(i));
    fs.push_back(std::move(f));
  }
  return KrausChannel(phi.dim_in(), nk, std::move(fs));
}

// --------------------------------------------------------------- diamond

namespace {

double entangled_output_norm(const SuperOperator& delta, const ComplexVector& psi) {
  const std::size_t di = delta.dim_in();
  const std::size_t dout = delta.dim_out();
  const ComplexVector u = psi / psi.norm();
  // u = sum_{i,a} u[i di + a] |i>|a>; column a of `cols` is the system vector of ref |a>.
  ComplexMatrix cols(idx(di), idx(di));
  for (std::size_t i = 0; i < di; ++i)
    for (std::size_t a = 0; a < di; ++a) cols(idx(i), idx(a)) = u[idx(i * di + a)];
  ComplexMatrix out = ComplexMatrix::Zero(idx(dout * di), idx(dout * di));
  for (std::size_t a = 0; a < di; ++a)
    for (std::size_t b = 0; b < di; ++b) {
      const ComplexMatrix y = delta.apply(ComplexMatrix(cols.col(idx(a)) * cols.col(idx(b)).adjoint()));
      for (std::size_t i = 0; i < dout; ++i)
        for (std::size_t j = 0; j < dout; ++j)
          out(idx(i * di + a), idx(j * di + b)) = y(idx(i), idx(j));
    }
  return trace_norm(HermitianMatrix(hermitize(out)));
}

double coordinate_ascent(const SuperOperator& delta, ComplexVector psi) {
  double best = entangled_output_norm(delta, psi);
  const Eigen::Index n = psi.size();
  double h = 0.25;
  int evals = 0;
  while (h > 1e-7 && evals < 20000) {
    bool improved = false;
    for (Eigen::Index k = 0; k < 2 * n; ++k) {
      for (double sgn : {1.0, -1.0}) {
        ComplexVector trial = psi;
        if (k < n)
          trial[k] += sgn * h;
        else
          trial[k - n] += Complex(0.0, sgn * h);
        if (trial.norm() == 0.0) continue;
        const double f = entangled_output_norm(delta, trial);
        ++evals;
        if (f > best + 1e-15) {
          best = f;
          psi = trial / trial.norm();
          improved = true;
          break;
        }
      }
    }
    if (!improved) h *= 0.5;
  }
  return best;
}

}  // namespace

double diamond_norm_estimate(const SuperOperator& delta, std::size_t restarts,
                             std::uint64_t seed) {
  const std::size_t di = delta.dim_in();
  if (max_abs_entry(delta.matrix()) == 0.0) return 0.0;
  ComplexVector me = ComplexVector::Zero(idx(di * di));
  for (std::size_t i = 0; i < di; ++i) me[idx(i * di + i)] = 1.0;
  double best = coordinate_ascent(delta, me);
  const std::uint64_t stream = stream_id("diamond_norm_estimate");
  for (std::size_t r = 1; r < restarts; ++r) {
    CounterRng rng(derive_seed(seed, stream, r));
    best = std::max(best, coordinate_ascent(delta, random_pure_vector(di * di, rng)));
  }
  return best;
}

// ----------------------------------------------------------- fixed point

ConditionalExpectation fixed_point_projection(const SuperOperator& generator) {
  const ComplexMatrix& l = generator.matrix();
  ComplexMatrix p = superop_exponential(-l);
  bool converged = false;
  for (int k = 0; k < 48; ++k) {
    const ComplexMatrix p2 = p * p;
    const double dev = max_abs_entry(p2 - p);
    p = p2;
    if (dev < 1e-6) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw std::runtime_error(
        "fixed_point_projection: no convergence (spectral gap below 1e-8); supply E analytically");
  for (int k = 0; k < 50 && max_abs_entry(p * p - p) > 1e-14; ++k) {
    const ComplexMatrix p2 = p * p;
    p = 3.0 * p2 - 2.0 * p2 * p;
  }
  if (max_abs_entry(l - l.adjoint()) < 1e-12) p = hermitize(p);
  return ConditionalExpectation::from_superop(
      SuperOperator(generator.dim_in(), generator.dim_out(), p));
}

// ------------------------------------------------------------------ JSON

nlohmann::json to_json(const KrausChannel& k) {
  nlohmann::json ops = nlohmann::json::array();
  for (const auto& m : k.kraus()) {
    nlohmann::json entries = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        entries.push_back({m(i, j).real(), m(i, j).imag()});
    ops.push_back(std::move(entries));
  }
  return {{"dimIn", k.dim_in()}, {"dimOut", k.dim_out()}, {"kraus", std::move(ops)}};
}

KrausChannel kraus_channel_from_json(const nlohmann::json& j) {
  const auto di = j.at("dimIn").get<std::size_t>();
  const auto dout = j.at("dimOut").get<std::size_t>();
  std::vector<ComplexMatrix> ks;
  for (const auto& op : j.at("kraus")) {
    if (op.size() != di * dout)
      throw std::invalid_argument("kraus_channel_from_json: wrong entry count");
    ComplexMatrix m(idx(dout), idx(di));
    std::size_t at = 0;
    for (std::size_t r = 0; r < dout; ++r)
      for (std::size_t c = 0; c < di; ++c, ++at)
        m(idx(r), idx(c)) = Complex(op[at].at(0).get<double>(), op[at].at(1).get<double>());
    ks.push_back(std::move(m));
  }
  return KrausChannel(di, dout, std::move(ks));
}

}  // namespace qdecay
