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

#include <fstream>

#include "coherentia/error.hpp"
#include "coherentia/json_io.hpp"
#include "coherentia_tools/commands.hpp"

namespace coherentia::cli {

std::string tool_version() { return COHERENTIA_VERSION; }

nlohmann::json to_json(const RunManifest& m) {
  return {{"command", m.command},     {"inputs", m.inputs},       {"master_seed", m.master_seed},
          {"tool_version", m.tool_version}, {"wall_time", m.wall_time}, {"outputs", m.outputs}};
}

void write_manifest(const RunManifest& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write manifest " + path.string());
  out << json_io::canonical(to_json(m)) << "\n";
}

}  // namespace coherentia::cli
