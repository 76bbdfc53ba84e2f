// Copyright 2026 The Coherentia Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "coherentia/random.hpp"

namespace coherentia {
namespace {

TEST(DeriveSeed, DistinctAndStable) {
  EXPECT_EQ(derive_seed(42, 3), derive_seed(42, 3));
  EXPECT_NE(derive_seed(42, 3), derive_seed(42, 4));
  EXPECT_NE(derive_seed(42, 3), derive_seed(43, 3));
}

TEST(HaarIsometry, ColumnsOrthonormal) {
  Rng rng(1);
  for (int k = 0; k < 100; ++k) {
    const ComplexMatrix v = haar_isometry(6, 3, rng);
    EXPECT_LE(max_abs(v.adjoint() * v - ComplexMatrix::Identity(3, 3)), 1e-12);
  }
  const ComplexMatrix u = haar_unitary(4, rng);
  EXPECT_LE(max_abs(u * u.adjoint() - ComplexMatrix::Identity(4, 4)), 1e-12);
}

TEST(RandomDensityMatrix, PassesInvariants) {
  Rng rng(2);
  for (int k = 0; k < 200; ++k) {
    const DensityMatrix rho = random_density_matrix(2 + k % 5, rng);
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_GE(hermitian_eigenvalues(rho.matrix())[0], -1e-12);
  }
}

TEST(RandomSimplexPoint, OnSimplex) {
  Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    const RealVector p = random_simplex_point(4, rng);
    EXPECT_NEAR(p.sum(), 1.0, 1e-14);
    EXPECT_GE(p.minCoeff(), 0.0);
  }
}

TEST(Generators, SameSeedSameBits) {
  Rng a(99), b(99);
  EXPECT_EQ(random_state_vector(5, a).amplitudes(), random_state_vector(5, b).amplitudes());
}

}  // namespace
}  // namespace coherentia
