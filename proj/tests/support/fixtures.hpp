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

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "coherentia/linalg.hpp"
#include "coherentia/random.hpp"

namespace coherentia::testing {

/// Hermitian matrix with Gaussian entries.
ComplexMatrix random_hermitian(Index dim, Rng& rng);

/// Fresh empty directory under the system temp dir, unique per call.
std::filesystem::path scratch_dir(const std::string& tag);

std::filesystem::path write_json(const std::filesystem::path& dir, const std::string& name, const nlohmann::json& j);

/// (|0> + |1> + |2>) / sqrt(3) in C^4: a pure state with the largest C_tr for B_I = {|0>, |1>}.
DensityMatrix maximal_state_4_2();

}  // namespace coherentia::testing
