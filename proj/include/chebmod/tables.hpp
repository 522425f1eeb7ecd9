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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "chebmod/simulator.hpp"

namespace chebmod {

enum class CheckKind { kAtMost, kAtLeast, kAbove, kEqual, kWithin, kInfo };

struct Check {
  CheckKind kind = CheckKind::kInfo;
  double bound = 0.0;
  double tolerance = 0.0;  // kWithin only

  static Check at_most(double b) { return {CheckKind::kAtMost, b, 0.0}; }
  static Check at_least(double b) { return {CheckKind::kAtLeast, b, 0.0}; }
  static Check above(double b) { return {CheckKind::kAbove, b, 0.0}; }
  static Check equal(double b) { return {CheckKind::kEqual, b, 0.0}; }
  static Check within(double target, double tol) { return {CheckKind::kWithin, target, tol}; }
  static Check info() { return {}; }

  bool holds(double value) const;
};

struct Cell {
  std::string row;
  std::string column;
  double value = 0.0;
  Check check;
  std::string reference;  // published figure, if any

  bool passed() const { return check.holds(value); }
};

struct Table {
  std::string name;
  std::string title;
  std::vector<Cell> cells;
  double seconds = 0.0;  // wall-clock, reported only

  void add(std::string row, std::string column, double value, Check check, std::string reference = {});
  const Cell* find(std::string_view row, std::string_view column) const;
  std::vector<const Cell*> failures() const;
  bool passed() const { return failures().empty(); }

  std::string to_csv() const;
  std::string to_markdown() const;
};

struct RunConfig {
  SimParams sim;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = "results";
  std::string table;
};

RunConfig run_config_from_file(const std::filesystem::path& path);

const std::vector<std::string>& table_names();

/// Deterministic per-job seed derived from the run seed and a job name.
std::uint64_t job_seed(std::uint64_t seed, std::string_view job);

/// Bytes of one serialized ciphertext in the modeled RNS-CKKS parameter set:
/// two ring elements of degree 2n over max_level + 1 64-bit limbs.
double ciphertext_bytes(const SimParams& params);

Table run_table(const std::string& name, const RunConfig& config);

/// Short end-to-end check over reduced parameters.
std::vector<Table> run_selftest(std::uint64_t seed);

std::string format_value(double v);
std::string check_symbol(CheckKind kind);

}  // namespace chebmod
