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

#ifndef QDECAY_RANDOM_HPP_
#define QDECAY_RANDOM_HPP_

#include <cstdint>
#include <string_view>
#include <vector>

#include "qdecay/matcore.hpp"

namespace qdecay {

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
std::uint64_t splitmix64_mix(std::uint64_t z);

// Counter-based stream: output k (k = 1, 2, ...) is
//   splitmix64_mix(seed + k * 0x9E3779B97F4A7C15).
// uniform() = (u64 >> 11) * 2^-53. normal() is Box-Muller on two uniforms,
// no caching. Reimplementations in other languages reproduce it exactly.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64();
  double uniform();        // [0, 1)
  double uniform_open();   // (0, 1)
  double normal();
  std::size_t below(std::size_t n);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

// Seed of sample `index` in stream `stream` under `root`.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream,
                          std::uint64_t index);

// FNV-1a, used to turn suite names into stream ids.
std::uint64_t stream_id(std::string_view name);

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, CounterRng& rng);
ComplexMatrix haar_unitary(std::size_t d, CounterRng& rng);
HermitianMatrix random_hermitian(std::size_t d, CounterRng& rng);
ComplexVector random_pure_vector(std::size_t d, CounterRng& rng);

// Hilbert-Schmidt measure: G G^dagger / tr, G square Ginibre.
DensityMatrix random_density_hs(std::size_t d, CounterRng& rng);
DensityMatrix random_pure_density(std::size_t d, CounterRng& rng);

// Uniform on the probability simplex (Dirichlet(1,...,1)).
std::vector<double> random_simplex(std::size_t d, CounterRng& rng);

// Diagonal in `basis` with the given spectrum.
DensityMatrix density_in_basis(const ComplexMatrix& basis,
                               const std::vector<double>& probs);

}  // namespace qdecay

#endif  // QDECAY_RANDOM_HPP_
