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

#ifndef QDECAY_CHANNELS_HPP_
#define QDECAY_CHANNELS_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"
#include "qdecay/matcore.hpp"

namespace qdecay {

class KrausChannel {
 public:
  // Throws std::invalid_argument on shape mismatch or if sum K^dagger K
  // differs from the identity by more than 1e-10.
  KrausChannel(std::size_t dim_in, std::size_t dim_out, std::vector<ComplexMatrix> kraus);

  static KrausChannel identity(std::size_t d);
  static KrausChannel unitary(const ComplexMatrix& u);

  std::size_t dim_in() const { return dim_in_; }
  std::size_t dim_out() const { return dim_out_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

  ComplexMatrix apply(const ComplexMatrix& x) const;
  DensityMatrix apply(const DensityMatrix& rho) const;

 private:
  std::size_t dim_in_;
  std::size_t dim_out_;
  std::vector<ComplexMatrix> kraus_;
};

// Linear map on matrices in column-stacking form: vec(X)[i + j n] = X(i, j).
class SuperOperator {
 public:
  SuperOperator(std::size_t dim_in, std::size_t dim_out, ComplexMatrix m);

  static SuperOperator identity(std::size_t d);
  static SuperOperator from_kraus(const KrausChannel& k);

  std::size_t dim_in() const { return dim_in_; }
  std::size_t dim_out() const { return dim_out_; }
  const ComplexMatrix& matrix() const { return m_; }

  ComplexMatrix apply(const ComplexMatrix& x) const;
  DensityMatrix apply(const DensityMatrix& rho) const;
  // (this o inner)(X) = this(inner(X)).
  SuperOperator compose(const SuperOperator& inner) const;

 private:
  std::size_t dim_in_;
  std::size_t dim_out_;
  ComplexMatrix m_;
};

SuperOperator operator+(const SuperOperator& a, const SuperOperator& b);
SuperOperator operator-(const SuperOperator& a, const SuperOperator& b);
SuperOperator operator*(double s, const SuperOperator& a);

// a (x) b acting on the left and right tensor factors.
SuperOperator tensor_superop(const SuperOperator& a, const SuperOperator& b);

// One block of a conditional expectation: `isometry` is d x (dim_b dim_c),
// column b * dim_c + c spans the block's B (x) C factors.
struct Block {
  ComplexMatrix isometry;
  std::size_t dim_b = 1;
  std::size_t dim_c = 1;
};

class ConditionalExpectation {
 public:
  // Analytic form E(rho) = sum_l W_l (tr_C(W_l^dagger rho W_l) (x) I/|C|) W_l^dagger.
  // The blocks must be orthogonal and cover the space.
  explicit ConditionalExpectation(std::vector<Block> blocks);
  // Numerical form. Validates idempotence and trace preservation within 1e-10.
  static ConditionalExpectation from_superop(SuperOperator s);

  std::size_t dim() const { return superop_.dim_in(); }
  bool analytic() const { return !blocks_.empty(); }
  const std::vector<Block>& blocks() const { return blocks_; }
  const SuperOperator& superop() const { return superop_; }

  ComplexMatrix apply(const ComplexMatrix& x) const { return superop_.apply(x); }
  DensityMatrix apply(const DensityMatrix& rho) const { return superop_.apply(rho); }

 private:
  explicit ConditionalExpectation(SuperOperator s) : superop_(std::move(s)) {}
  std::vector<Block> blocks_;
  SuperOperator superop_;
};

ConditionalExpectation pinching(const ComplexMatrix& basis);
ConditionalExpectation depolarizing_projection(std::size_t d);
ConditionalExpectation identity_projection(std::size_t d);

class Lindbladian {
 public:
  // Validates tr L(X) = 0 and E o exp(-L) = E.
  Lindbladian(SuperOperator generator, ConditionalExpectation fixed_point,
              double diamond_norm_upper, double pp_index);

  const SuperOperator& generator() const { return generator_; }
  const ConditionalExpectation& fixed_point() const { return fixed_point_; }
  double diamond_norm_upper() const { return diamond_; }
  double pp_index() const { return pp_index_; }
  std::size_t dim() const { return generator_.dim_in(); }

  // exp(-t L); t >= 0.
  SuperOperator propagator(double t) const;

 private:
  SuperOperator generator_;
  ConditionalExpectation fixed_point_;
  double diamond_;
  double pp_index_;
};

struct GroupLindbladian {
  std::vector<ComplexMatrix> unitaries;
  std::vector<double> probs;
  // Throws std::invalid_argument on any invariant violation.
  void validate() const;
};

// Generator L = rate (Id - E). The diamond bound defaults to 2 rate.
Lindbladian replacement_lindbladian(const ConditionalExpectation& e, double rate = 1.0,
                                    std::optional<double> diamond_upper = std::nullopt);
// Depolarizing semigroup e^{-t} rho + (1 - e^{-t}) I/d with the
// diamond constant supplied by the caller.
Lindbladian depolarizing_lindbladian(std::size_t d, double diamond_upper);
Lindbladian group_lindbladian(const GroupLindbladian& g);
// The same semigroup with an untouched auxiliary factor on the right.
Lindbladian extend_with_auxiliary(const Lindbladian& l, std::size_t aux_dim);

DensityMatrix semigroup_apply(const Lindbladian& l, double t, const DensityMatrix& rho);
// e^{-t} Id + (1 - e^{-t}) E.
SuperOperator replacement_semigroup(const ConditionalExpectation& e, double t);

// exp(A) by scaling and squaring with a degree-12 Taylor polynomial.
ComplexMatrix superop_exponential(const ComplexMatrix& a);

KrausChannel depolarizing(std::size_t d, double lambda);
// (1 - lambda) rho + lambda pinch_U(rho) for the basis in the columns of U.
KrausChannel dephasing(const ComplexMatrix& basis, double lambda);
KrausChannel dephasing_y(double lambda);

// sum_ij Phi(|i><j|) (x) |i><j|, output factor first.
HermitianMatrix choi_matrix(const SuperOperator& phi);
HermitianMatrix choi_matrix(const KrausChannel& phi);

// Smallest c with c Choi(phi) - Choi(psi) >= 0.
ExtendedReal cp_order_coefficient(const SuperOperator& phi, const SuperOperator& psi);
double pimsner_popa_index(const ConditionalExpectation& e);

// Environment dimension = number of Kraus operators.
KrausChannel complementary_channel(const KrausChannel& phi);

// Lower estimate of the diamond norm over pure inputs with a reference of the
// input dimension. Restart 0 is the maximally entangled input; the others are
// random with per-restart seeds derived from `seed`.
double diamond_norm_estimate(const SuperOperator& delta, std::size_t restarts,
                             std::uint64_t seed = 0);

// Eigenvalue-1 spectral projection of exp(-L). Throws std::runtime_error when
// the spectral gap is too small to converge.
ConditionalExpectation fixed_point_projection(const SuperOperator& generator);

nlohmann::json to_json(const KrausChannel& k);
KrausChannel kraus_channel_from_json(const nlohmann::json& j);

}  // namespace qdecay

#endif  // QDECAY_CHANNELS_HPP_
