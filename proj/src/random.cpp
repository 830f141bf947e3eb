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

#include "qdecay/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qdecay {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kStreamMul = 0xD1B54A32D192ED03ULL;
}  // namespace

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t CounterRng::next_u64() {
  ++counter_;
  return splitmix64_mix(seed_ + counter_ * kGolden);
}

double CounterRng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::uniform_open() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal() {
  const double u1 = uniform_open();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t CounterRng::below(std::size_t n) {
  if (n == 0) throw std::invalid_argument("CounterRng::below: n == 0");
  return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream,
                          std::uint64_t index) {
  return splitmix64_mix(splitmix64_mix(root ^ (stream * kStreamMul)) +
                        (index + 1) * kGolden);
}

std::uint64_t stream_id(std::string_view name) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char ch : name) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001B3ULL;
  }
  return h;
}

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, CounterRng& rng) {
  ComplexMatrix g(rows, cols);
  const double s = std::sqrt(0.5);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = Complex(s * re, s * im);
    }
  return g;
}

ComplexMatrix haar_unitary(std::size_t d, CounterRng& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::size_t k = 0; k < d; ++k) {
    const Complex rk = r(k, k);
    const double a = std::abs(rk);
    if (a > 0.0) q.col(k) *= rk / a;
  }
  return q;
}

HermitianMatrix random_hermitian(std::size_t d, CounterRng& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  return HermitianMatrix(ComplexMatrix(0.5 * (g + g.adjoint())));
}

ComplexVector random_pure_vector(std::size_t d, CounterRng& rng) {
  ComplexVector v = ginibre(d, 1, rng).col(0);
  return v / v.norm();
}

DensityMatrix random_density_hs(std::size_t d, CounterRng& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  ComplexMatrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix(ComplexMatrix(0.5 * (m + m.adjoint())));
}

DensityMatrix random_pure_density(std::size_t d, CounterRng& rng) {
  return DensityMatrix::pure(random_pure_vector(d, rng));
}

std::vector<double> random_simplex(std::size_t d, CounterRng& rng) {
  std::vector<double> p(d);
  double s = 0.0;
  for (auto& x : p) {
    x = -std::log(rng.uniform_open());
    s += x;
  }
  for (auto& x : p) x /= s;
  return p;
}

DensityMatrix density_in_basis(const ComplexMatrix& basis,
                               const std::vector<double>& probs) {
  RealVector v(static_cast<Eigen::Index>(probs.size()));
  for (std::size_t i = 0; i < probs.size(); ++i) v[static_cast<Eigen::Index>(i)] = probs[i];
  const ComplexMatrix m = basis * v.cast<Complex>().asDiagonal() * basis.adjoint();
  return DensityMatrix(ComplexMatrix(0.5 * (m + m.adjoint())));
}

}  // namespace qdecay
