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

#pragma once

#include <cstdint>
#include <random>

#include "coherentia/linalg.hpp"

namespace coherentia {

using Rng = std::mt19937_64;

/// Child seed for stream `index` of `master` (splitmix64 finalizer). Used to
/// give every restart its own reproducible stream.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Matrix with i.i.d. standard complex Gaussian entries.
ComplexMatrix gaussian_matrix(Index rows, Index cols, Rng& rng);

/// rows x cols isometry (rows >= cols) distributed by the Haar measure.
ComplexMatrix haar_isometry(Index rows, Index cols, Rng& rng);
ComplexMatrix haar_unitary(Index dim, Rng& rng);

/// Uniformly distributed pure state.
StateVector random_state_vector(Index dim, Rng& rng);

/// G G^dagger / Tr for Gaussian G (Hilbert-Schmidt measure).
DensityMatrix random_density_matrix(Index dim, Rng& rng);

/// Uniform point on the probability simplex.
RealVector random_simplex_point(Index n, Rng& rng);

}  // namespace coherentia
