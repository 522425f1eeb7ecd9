/* Copyright (C) 2026 The chebmod Authors
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License. See accompanying LICENSE file.
 */
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "chebmod/fitting.hpp"
#include "chebmod/pipeline.hpp"
#include "chebmod/shares.hpp"
#include "chebmod/simulator.hpp"

namespace chebmod::io {

using nlohmann::json;

// Malformed or unreadable input file.
class FormatError : public Error {
 public:
  using Error::Error;
};

json plan_to_json(const ModPlan& plan);
ModPlan plan_from_json(const json& j);
void write_plan(const std::filesystem::path& path, const ModPlan& plan);
ModPlan read_plan(const std::filesystem::path& path);

json sim_params_to_json(const SimParams& params);
SimParams sim_params_from_json(const json& j);  // missing keys keep defaults

/// Plan files are resolved against `base_dir`.  Stack stages may give
/// "degree" instead of "plan_files"; plans are then fitted on load.
PackLayout layout_from_json(const json& j, const std::filesystem::path& base_dir);
PackLayout read_layout(const std::filesystem::path& path);

/// Leaves are {"party": i}; internal nodes {"children": [...], "plan_file": f}.
ReconstructPlan reconstruct_plan_from_json(const json& j, const std::filesystem::path& base_dir);
json reconstruct_plan_to_json(const ReconstructPlan& plan, const std::filesystem::path& base_dir,
                              const std::string& stem);

/// Newline-delimited JSON arrays; elements are numbers or [re, im] pairs.
std::vector<std::vector<cplx>> read_data(const std::filesystem::path& path);
std::vector<std::vector<cplx>> parse_data(const std::string& text);
/// Real-valued rows are written as plain numbers.
void write_data(const std::filesystem::path& path, const std::vector<std::vector<cplx>>& rows);
std::string format_data(const std::vector<std::vector<cplx>>& rows);

json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace chebmod::io
