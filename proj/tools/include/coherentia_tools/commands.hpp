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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace coherentia::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kNotConverged = 2 };

/// Entry points of the three executables. `args` excludes the program name.
int run_coherence(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_duality(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_norm_factor(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  std::uint64_t master_seed = 0;
  std::string tool_version;
  double wall_time = 0.0;
  nlohmann::json outputs;
};

nlohmann::json to_json(const RunManifest& m);
void write_manifest(const RunManifest& m, const std::filesystem::path& path);
std::string tool_version();

}  // namespace coherentia::cli
