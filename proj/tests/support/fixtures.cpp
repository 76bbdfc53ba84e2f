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

#include "fixtures.hpp"

#include <atomic>
#include <fstream>

#include <unistd.h>

namespace coherentia::testing {

ComplexMatrix random_hermitian(Index dim, Rng& rng) {
  const ComplexMatrix g = gaussian_matrix(dim, dim, rng);
  return 0.5 * (g + g.adjoint());
}

std::filesystem::path scratch_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  const auto dir = std::filesystem::temp_directory_path() /
                   ("coherentia-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::filesystem::path write_json(const std::filesystem::path& dir, const std::string& name, const nlohmann::json& j) {
  const auto path = dir / name;
  std::ofstream(path) << j.dump();
  return path;
}

DensityMatrix maximal_state_4_2() {
  ComplexVector v = ComplexVector::Zero(4);
  v << 1.0, 1.0, 1.0, 0.0;
  return DensityMatrix::pure(StateVector::normalized(v));
}

}  // namespace coherentia::testing
