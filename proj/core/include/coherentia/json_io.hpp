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
#include <string_view>

#include <nlohmann/json.hpp>

#include "coherentia/interferometer.hpp"
#include "coherentia/linalg.hpp"
#include "coherentia/measures.hpp"
#include "coherentia/resource_theory.hpp"

// JSON layouts used by every tool:
//   matrix   {"rows": r, "cols": c, "entries": [[re, im], ...]}   (row-major)
//   vector   {"dim": d, "amplitudes": [[re, im], ...]}
//   basis    {"dim": d, "vectors": [vector, ...]}
//   channel  {"dim": d, "kraus": [matrix, ...]}
//   config   {"amplitudes": [[re, im] x 4], "detectors": [vector x 4]}
// Parse errors are reported as ValidationError with a JSON-path-like prefix.
namespace coherentia::json_io {

using Json = nlohmann::json;

Json to_json(const ComplexMatrix& m);
Json to_json(const StateVector& v);
Json to_json(const DensityMatrix& rho);
Json to_json(const IncompleteBasis& basis);
Json to_json(const KrausChannel& channel);
Json to_json(const InterferometerConfig& cfg);
Json to_json(const FreeStateParams& params);
Json to_json(const BasisCompletion& completion);
Json to_json(const StructureCheck& check);

ComplexMatrix matrix_from_json(const Json& j, std::string_view where = "matrix");
StateVector state_vector_from_json(const Json& j, std::string_view where = "vector");
/// Accepts a matrix, or a vector (read as the pure state it defines).
DensityMatrix density_from_json(const Json& j, std::string_view where = "state");
IncompleteBasis basis_from_json(const Json& j, std::string_view where = "basis");
KrausChannel channel_from_json(const Json& j, std::string_view where = "channel");
InterferometerConfig config_from_json(const Json& j, std::string_view where = "config");
FreeStateParams free_params_from_json(const Json& j, std::string_view where = "params");

/// Reads and parses a JSON file; the error message names the path.
Json read_file(const std::filesystem::path& path);

/// Single-line JSON with sorted keys.
std::string canonical(const Json& j);

}  // namespace coherentia::json_io
