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
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chebmod/fitting.hpp"
#include "chebmod/io.hpp"
#include "chebmod/pipeline.hpp"
#include "chebmod/simulator.hpp"
#include "chebmod/tables.hpp"

namespace fs = std::filesystem;
using namespace chebmod;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitBound = 1;
constexpr int kExitUsage = 2;

SimParams load_sim(const std::string& path, std::optional<std::size_t> slots) {
  SimParams p;
  if (!path.empty()) {
    const io::json j = io::read_json(path);
    p = io::sim_params_from_json(j.contains("sim") ? j.at("sim") : j);
  }
  if (slots) p.slots = *slots;
  p.validate();
  return p;
}

std::vector<std::vector<double>> real_rows(const std::vector<std::vector<cplx>>& rows) {
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<double> r;
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      if (rows[i][j].imag() != 0.0) {
        throw RangeError("data vector " + std::to_string(i) + ", element " + std::to_string(j) + " is not real");
      }
      r.push_back(rows[i][j].real());
    }
    out.push_back(std::move(r));
  }
  return out;
}

int cmd_fit(long p, long upper, int degree, std::optional<double> delta, const std::string& out) {
  const ModPlan plan = delta ? fit_modp(p, upper, degree, *delta) : fit_modp_auto(p, upper, degree);
  io::write_plan(out, plan);
  std::printf("p=%ld B=%ld D=%d delta=%g residual=%.3e mean_error=%.3e max|beta|=%.3f -> %s\n", p, upper, degree,
              plan.delta, plan.residual, plan.mean_error, plan.max_abs_coefficient(), out.c_str());
  return kExitPass;
}

int cmd_pack(const std::string& layout_path, const std::string& data_path, const std::string& out,
             const SimParams& sim) {
  const PackLayout layout = io::read_layout(layout_path);
  const auto data = real_rows(io::read_data(data_path));
  auto packed = pipeline_pack(data, layout, sim.slots);
  for (auto& row : packed) {
    while (!row.empty() && row.back() == cplx{}) row.pop_back();
  }
  io::write_data(out, packed);
  std::printf("%zu vectors -> %zu ciphertexts -> %s\n", data.size(), packed.size(), out.c_str());
  return kExitPass;
}

int cmd_unpack(const std::string& layout_path, const std::string& packed_path, const std::string& data_path,
               const std::string& out, const SimParams& params, double tolerance) {
  const PackLayout layout = io::read_layout(layout_path);
  const auto data = real_rows(io::read_data(data_path));
  const auto packed = io::read_data(packed_path);
  std::vector<std::size_t> sizes;
  for (const auto& v : data) sizes.push_back(v.size());

  const Simulator sim(params);
  std::vector<SlotCiphertext> cts;
  for (const auto& row : packed) cts.push_back(sim.encrypt(row));
  const auto recovered = pipeline_unpack(sim, cts, layout, sizes);

  std::vector<std::vector<cplx>> rows;
  bool ok = true;
  std::printf("vector,length,max_error,mean_error,remaining_level\n");
  for (std::size_t i = 0; i < recovered.size(); ++i) {
    const auto slots = recovered[i].slots();
    rows.emplace_back(slots.begin(), slots.begin() + static_cast<std::ptrdiff_t>(sizes[i]));
    double worst = 0.0;
    double sum = 0.0;
    for (std::size_t j = 0; j < sizes[i]; ++j) {
      const double e = std::abs(slots[j] - cplx(data[i][j], 0.0));
      worst = std::max(worst, e);
      sum += e;
    }
    const double mean = sizes[i] ? sum / static_cast<double>(sizes[i]) : 0.0;
    std::printf("%zu,%zu,%.3e,%.3e,%d\n", i, sizes[i], worst, mean, recovered[i].level());
    ok = ok && worst <= tolerance;
  }
  io::write_data(out, rows);
  if (!ok) {
    std::fprintf(stderr, "recovered values exceed tolerance %.1e\n", tolerance);
    return kExitBound;
  }
  return kExitPass;
}

int report(const Table& t, const fs::path& dir) {
  io::write_text(dir / (t.name + ".csv"), t.to_csv());
  io::write_text(dir / (t.name + ".md"), t.to_markdown());
  const auto failed = t.failures();
  std::printf("%-9s %3zu cells  %zu failed  %.2f s wall\n", t.name.c_str(), t.cells.size(), failed.size(), t.seconds);
  for (const Cell* c : failed) {
    std::printf("  FAIL %s/%s = %s, needs %s %s\n", c->row.c_str(), c->column.c_str(), format_value(c->value).c_str(),
                check_symbol(c->check.kind).c_str(), format_value(c->check.bound).c_str());
  }
  return failed.empty() ? kExitPass : kExitBound;
}

int cmd_table(const std::string& name, const std::string& config_path, const std::string& out,
              std::optional<std::uint64_t> seed) {
  RunConfig cfg = config_path.empty() ? RunConfig{} : run_config_from_file(config_path);
  if (!name.empty()) cfg.table = name;
  if (!out.empty()) cfg.output_dir = out;
  if (seed) cfg.seed = *seed;
  if (cfg.table.empty()) throw CLI::ValidationError("table", "no table name given");

  std::vector<std::string> names;
  if (cfg.table == "all") {
    names = table_names();
  } else {
    names.push_back(cfg.table);
  }
  int code = kExitPass;
  for (const auto& n : names) {
    if (std::find(table_names().begin(), table_names().end(), n) == table_names().end()) {
      throw CLI::ValidationError("--name", "unknown table " + n);
    }
    code = std::max(code, report(run_table(n, cfg), cfg.output_dir));
  }
  return code;
}

int cmd_selftest(std::uint64_t seed, const std::string& out) {
  int code = kExitPass;
  for (const Table& t : run_selftest(seed)) {
    code = std::max(code, out.empty() ? (t.passed() ? kExitPass : kExitBound) : report(t, out));
    if (out.empty()) {
      std::printf("%-9s %s\n", t.name.c_str(), t.passed() ? "ok" : "FAILED");
    }
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Full-range ModP approximation, packing, and table harness"};
  app.require_subcommand(1);

  long p = 0, upper = 0;
  int degree = 0;
  std::optional<double> delta;
  std::string out, layout, data, packed, config, sim_file, name;
  std::optional<std::size_t> slots;
  std::optional<std::uint64_t> seed;
  std::uint64_t selftest_seed = 1;
  double tolerance = 1e-4;

  auto* fit = app.add_subcommand("fit", "Fit a ModP plan and write it as JSON");
  fit->add_option("--p", p, "Modulus")->required()->check(CLI::Range(2L, 1L << 24));
  fit->add_option("--B", upper, "Upper end of the interval [0, B]")->required()->check(CLI::PositiveNumber);
  fit->add_option("--D", degree, "Polynomial degree (> B)")->required()->check(CLI::PositiveNumber);
  fit->add_option("--delta", delta, "Scaling factor; suggested automatically when omitted");
  fit->add_option("--out", out, "Plan file")->required();

  auto* pack = app.add_subcommand("pack", "Pack data vectors through a layout");
  pack->add_option("--layout", layout, "Layout JSON")->required()->check(CLI::ExistingFile);
  pack->add_option("--data", data, "Newline-delimited JSON vectors")->required()->check(CLI::ExistingFile);
  pack->add_option("--out", out, "Packed output")->required();
  pack->add_option("--sim", sim_file, "Simulator parameters JSON")->check(CLI::ExistingFile);
  pack->add_option("--slots", slots, "Slot count override");

  auto* unpack = app.add_subcommand("unpack", "Encrypt packed rows, unpack, and report errors");
  unpack->add_option("--layout", layout, "Layout JSON")->required()->check(CLI::ExistingFile);
  unpack->add_option("--packed", packed, "Output of pack")->required()->check(CLI::ExistingFile);
  unpack->add_option("--data", data, "Original vectors (sizes and reference values)")
      ->required()
      ->check(CLI::ExistingFile);
  unpack->add_option("--out", out, "Recovered vectors")->required();
  unpack->add_option("--sim", sim_file, "Simulator parameters JSON")->check(CLI::ExistingFile);
  unpack->add_option("--slots", slots, "Slot count override");
  unpack->add_option("--tolerance", tolerance, "Largest accepted element error");

  auto* table = app.add_subcommand("table", "Regenerate a result table as CSV and Markdown");
  table->add_option("--name", name, "modp4|modp5|floor|bitstack|crtstack|combine|shares|depth|all");
  table->add_option("--config", config, "Run configuration JSON")->check(CLI::ExistingFile);
  table->add_option("--out", out, "Output directory");
  table->add_option("--seed", seed, "Seed override");

  auto* selftest = app.add_subcommand("selftest", "Quick end-to-end check on reduced parameters");
  selftest->add_option("--seed", selftest_seed, "Seed");
  selftest->add_option("--out", out, "Write tables to this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*fit) return cmd_fit(p, upper, degree, delta, out);
    if (*pack) return cmd_pack(layout, data, out, load_sim(sim_file, slots));
    if (*unpack) return cmd_unpack(layout, packed, data, out, load_sim(sim_file, slots), tolerance);
    if (*table) return cmd_table(name, config, out, seed);
    if (*selftest) return cmd_selftest(selftest_seed, out);
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
