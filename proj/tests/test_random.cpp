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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "qdecay/random.hpp"

namespace qdecay {
namespace {

// Reference SplitMix64 outputs for seed 0 (Vigna's published generator).
TEST(CounterRng, MatchesSplitMix64ReferenceStream) {
  CounterRng rng(0);
  EXPECT_EQ(rng.next_u64(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(rng.next_u64(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(rng.next_u64(), 0x06C45D188009454FULL);
  EXPECT_EQ(rng.counter(), 3u);
}

TEST(CounterRng, StreamsAreReproducibleAndDistinct) {
  CounterRng a(derive_seed(7, stream_id("pinsker"), 3));
  CounterRng b(derive_seed(7, stream_id("pinsker"), 3));
  CounterRng c(derive_seed(7, stream_id("pinsker"), 4));
  CounterRng d(derive_seed(7, stream_id("gaorouze"), 3));
  const std::uint64_t x = a.next_u64();
  EXPECT_EQ(x, b.next_u64());
  EXPECT_NE(x, c.next_u64());
  EXPECT_NE(x, d.next_u64());
}

TEST(StreamId, Fnv1a64) {
  EXPECT_EQ(stream_id(""), 0xCBF29CE484222325ULL);
  EXPECT_EQ(stream_id("a"), 0xAF63DC4C8601EC8CULL);
}

TEST(CounterRng, UniformMoments) {
  CounterRng rng(1);
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    s += u;
    s2 += u * u;
  }
  EXPECT_NEAR(s / n, 0.5, 5e-3);
  EXPECT_NEAR(s2 / n, 1.0 / 3.0, 5e-3);
}

TEST(CounterRng, NormalMoments) {
  CounterRng rng(2);
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    s += z;
    s2 += z * z;
  }
  EXPECT_NEAR(s / n, 0.0, 1e-2);
  EXPECT_NEAR(s2 / n, 1.0, 1e-2);
}

TEST(RandomStates, HaarUnitaryIsUnitary) {
  CounterRng rng(5);
  for (std::size_t d : {2, 3, 6}) {
    const ComplexMatrix u = haar_unitary(d, rng);
    const ComplexMatrix id = ComplexMatrix::Identity(static_cast<Eigen::Index>(d),
                                                     static_cast<Eigen::Index>(d));
    EXPECT_LT((u.adjoint() * u - id).norm(), 1e-13);
  }
}

TEST(RandomStates, HilbertSchmidtDensityIsValidAndFullRank) {
  CounterRng rng(6);
  for (int rep = 0; rep < 20; ++rep) {
    const DensityMatrix rho = random_density_hs(3, rng);
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_EQ(rho.spectrum().support_rank(), 3u);
  }
}

TEST(RandomStates, SimplexSumsToOne) {
  CounterRng rng(8);
  const std::vector<double> p = random_simplex(5, rng);
  EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-15);
  for (double x : p) EXPECT_GT(x, 0.0);
}

TEST(RandomStates, PureDensityHasRankOne) {
  CounterRng rng(10);
  EXPECT_EQ(random_pure_density(4, rng).spectrum().support_rank(), 1u);
}

}  // namespace
}  // namespace qdecay
