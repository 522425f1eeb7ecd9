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
#include "chebmod/tables.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>

#include "chebmod/io.hpp"
#include "chebmod/modp.hpp"
#include "chebmod/packing.hpp"
#include "chebmod/pipeline.hpp"
#include "chebmod/rounding.hpp"
#include "chebmod/shares.hpp"

namespace chebmod {

namespace {

struct ErrorStats {
  double mean = 0.0;
  double max = 0.0;
};

ErrorStats slot_errors(std::span<const cplx> got, std::span<const double> want) {
  ErrorStats st;
  if (want.empty()) return st;
  for (std::size_t i = 0; i < want.size(); ++i) {
    const double e = std::abs(got[i] - cplx(want[i], 0.0));
    st.mean += e;
    st.max = std::max(st.max, e);
  }
  st.mean /= static_cast<double>(want.size());
  return st;
}

std::vector<double> iota_values(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i);
  return v;
}

std::vector<long> random_digits(std::mt19937_64& rng, long radix, std::size_t n) {
  std::uniform_int_distribution<long> dist(0, radix - 1);
  std::vector<long> v(n);
  for (long& x : v) x = dist(rng);
  return v;
}

std::vector<double> as_doubles(const std::vector<long>& v) { return {v.begin(), v.end()}; }

std::string deg_label(int d) { return "D=" + std::to_string(d); }

int levels_used(const SimParams& p, const SlotCiphertext& ct) { return p.max_level - ct.level(); }

// ---- ModP(x, p) over [0, 29] ----

Table modp_table(long p, const RunConfig& cfg) {
  Table t{"modp" + std::to_string(p), "Average absolute error of ModP(x," + std::to_string(p) + ") over [0,29]", {}};
  const std::vector<int> degrees{35, 40, 45, 50};
  const std::vector<double> bounds{1e-3, 1e-5, 1e-6, 1e-6};
  const std::map<long, std::vector<std::string>> refs{{4, {"9.217e-05", "2.676e-07", "2.761e-08", "8.277e-08"}},
                                                      {5, {"9.753e-05", "2.907e-07", "2.657e-08", "7.071e-08"}}};
  const Simulator sim(cfg.sim);
  const std::vector<double> xs = iota_values(30);
  const SlotCiphertext ct = sim.encrypt_real(xs);
  std::vector<double> want;
  for (double x : xs) want.push_back(std::fmod(x, static_cast<double>(p)));

  for (std::size_t i = 0; i < degrees.size(); ++i) {
    const ModPlan plan = fit_modp(p, 29, degrees[i]);
    sim.reset_counts();
    const SlotCiphertext out = apply_plan(sim, ct, plan);
    const ErrorStats e = slot_errors(out.slots(), want);
    const std::string row = deg_label(degrees[i]);
    const auto ref = refs.count(p) ? refs.at(p)[i] : std::string{};
    t.add(row, "mean_abs_error", e.mean, Check::at_most(bounds[i]), ref);
    t.add(row, "max_abs_error", e.max, Check::info());
    t.add(row, "fit_residual", plan.residual, Check::info());
    t.add(row, "delta", plan.delta, Check::info());
    t.add(row, "levels_used", levels_used(cfg.sim, out), Check::info());
    t.add(row, "multiplications", static_cast<double>(sim.counts().multiplications()), Check::info());
  }
  return t;
}

// ---- Floor(x, p) over [0, 29] ----

Table floor_table(const RunConfig& cfg) {
  Table t{"floor", "Approximation error of Floor function over [0,29]", {}};
  const std::vector<int> degrees{35, 40, 45, 50};
  const std::map<long, std::vector<std::string>> refs{
      {4, {"7.70e-07", "5.30e-09", "1.38e-09", "1.28e-09"}}, {5, {"1.05e-07", "1.02e-09", "1.08e-09", "1.20e-09"}},
      {6, {"3.56e-07", "2.87e-09", "1.03e-09", "9.89e-10"}}, {7, {"1.90e-07", "9.76e-10", "6.47e-10", "7.75e-10"}},
      {8, {"3.33e-07", "1.67e-09", "5.87e-10", "6.87e-10"}}, {9, {"1.52e-07", "7.03e-10", "5.21e-10", "5.22e-10"}}};
  const Simulator sim(cfg.sim);
  const std::vector<double> xs = iota_values(30);
  const SlotCiphertext ct = sim.encrypt_real(xs);
  for (long p = 4; p <= 9; ++p) {
    std::vector<double> want;
    for (double x : xs) want.push_back(std::floor(x / static_cast<double>(p)));
    for (std::size_t i = 0; i < degrees.size(); ++i) {
      const ModPlan plan = fit_modp(p, 29, degrees[i]);
      const ErrorStats e = slot_errors(floor_he(sim, ct, p, plan).slots(), want);
      const Check check = degrees[i] >= 40 ? Check::at_most(1e-7) : Check::info();
      t.add("p=" + std::to_string(p), deg_label(degrees[i]), e.mean, check, refs.at(p)[i]);
    }
  }
  return t;
}

// ---- BitStack ----

struct BitStackCase {
  std::string name;
  std::vector<int> bits;
  int degree;
  std::vector<double> bounds;
  std::vector<int> remaining;  // empty: not checked
  std::vector<std::string> refs;
};

const std::vector<BitStackCase>& bitstack_cases() {
  static const std::vector<BitStackCase> cases{
      {"BitStack90", {2, 2, 2}, 90, {1e-4, 1e-2, 1e-3}, {16, 7, 7}, {"1.21e-05", "1.40e-03", "3.47e-04"}},
      {"BitStack210", {2, 2, 2}, 210, {1e-4, 1e-3, 1e-4}, {15, 5, 5}, {"3.94e-05", "1.88e-04", "4.66e-05"}},
      {"BitStack4x2", {4, 4}, 400, {1e-3, 1e-4}, {}, {"5.16e-04", "3.22e-05"}},
  };
  return cases;
}

struct StackRun {
  std::vector<ErrorStats> errors;
  std::vector<int> remaining;
  std::uint64_t multiplications = 0;
};

StackRun run_bitstack(const Simulator& sim, const BitStackCase& c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const BitStackLayout layout = BitStackLayout::binary(c.bits, c.degree);
  std::vector<std::vector<long>> layers;
  for (long r : layout.radices) layers.push_back(random_digits(rng, r, sim.slots()));
  const SlotCiphertext ct = sim.encrypt(to_complex(bitstack_pack(layers, layout)));
  sim.reset_counts();
  const auto out = bitstack_unpack(sim, ct, layout);
  StackRun run;
  for (std::size_t i = 0; i < out.size(); ++i) {
    run.errors.push_back(slot_errors(out[i].slots(), as_doubles(layers[i])));
    run.remaining.push_back(out[i].level());
  }
  run.multiplications = sim.counts().multiplications();
  return run;
}

StackRun run_crt(const Simulator& sim, const std::vector<long>& moduli, int degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const CrtBasis basis = CrtBasis::make(moduli, degree);
  std::vector<std::vector<long>> layers;
  for (long m : moduli) layers.push_back(random_digits(rng, m, sim.slots()));
  const SlotCiphertext ct = sim.encrypt(to_complex(crt_pack(layers, basis)));
  sim.reset_counts();
  const auto out = crt_unpack(sim, ct, basis);
  StackRun run;
  for (std::size_t i = 0; i < out.size(); ++i) {
    run.errors.push_back(slot_errors(out[i].slots(), as_doubles(layers[i])));
    run.remaining.push_back(out[i].level());
  }
  run.multiplications = sim.counts().multiplications();
  return run;
}

std::string layer_col(std::size_t i, const char* what) { return "a" + std::to_string(i + 1) + "_" + what; }

Table bitstack_table(const RunConfig& cfg) {
  Table t{"bitstack", "BitStack unpacking error and remaining depth", {}};
  const Simulator sim(cfg.sim);
  for (const auto& c : bitstack_cases()) {
    const StackRun run = run_bitstack(sim, c, job_seed(cfg.seed, "bitstack/" + c.name));
    for (std::size_t i = 0; i < run.errors.size(); ++i) {
      t.add(c.name, layer_col(i, "mean_error"), run.errors[i].mean, Check::at_most(c.bounds[i]), c.refs[i]);
      t.add(c.name, layer_col(i, "max_error"), run.errors[i].max, Check::info());
      const Check lvl = c.remaining.empty() ? Check::info() : Check::within(c.remaining[i], 1);
      const std::string ref = c.remaining.empty() ? std::string{} : std::to_string(c.remaining[i]);
      t.add(c.name, layer_col(i, "remaining_level"), run.remaining[i], lvl, ref);
    }
    if (run.errors.size() == 3) {
      t.add(c.name, "middle_minus_last_error", run.errors[1].mean - run.errors[2].mean, Check::at_least(0.0));
    }
    t.add(c.name, "multiplications", static_cast<double>(run.multiplications), Check::info());
  }
  return t;
}

Table crt_table(const RunConfig& cfg) {
  Table t{"crtstack", "CRTStack unpacking error and remaining depth", {}};
  const Simulator sim(cfg.sim);
  const std::vector<std::string> refs{"2.56e-06", "3.06e-07", "2.38e-07"};
  const StackRun run = run_crt(sim, {4, 5, 7}, 210, job_seed(cfg.seed, "crtstack"));
  for (std::size_t i = 0; i < run.errors.size(); ++i) {
    t.add("CRTStack", layer_col(i, "mean_error"), run.errors[i].mean, Check::at_most(1e-5), refs[i]);
    t.add("CRTStack", layer_col(i, "max_error"), run.errors[i].max, Check::info());
    t.add("CRTStack", layer_col(i, "remaining_level"), run.remaining[i], Check::at_least(14), "15");
  }
  t.add("CRTStack", "multiplications", static_cast<double>(run.multiplications), Check::info());
  return t;
}

Table depth_table(const RunConfig& cfg) {
  Table t{"depth", "Available multiplicative depth after unpacking", {}};
  // Levels do not depend on the slot count.
  SimParams small = cfg.sim;
  small.slots = std::min<std::size_t>(small.slots, 1024);
  const Simulator sim(small);
  for (const auto& c : bitstack_cases()) {
    if (c.remaining.empty()) continue;
    const StackRun run = run_bitstack(sim, c, job_seed(cfg.seed, "depth/" + c.name));
    for (std::size_t i = 0; i < run.remaining.size(); ++i) {
      t.add("a" + std::to_string(i + 1), c.name, run.remaining[i], Check::within(c.remaining[i], 1),
            std::to_string(c.remaining[i]));
    }
  }
  const StackRun crt = run_crt(sim, {4, 5, 7}, 210, job_seed(cfg.seed, "depth/CRTStack"));
  for (std::size_t i = 0; i < crt.remaining.size(); ++i) {
    t.add("a" + std::to_string(i + 1), "CRTStack", crt.remaining[i], Check::within(15, 1), "15");
  }
  return t;
}

// ---- combinations ----

struct CombineCase {
  std::string name;
  std::vector<PackStage> stages;
  bool packed;  // false: one ciphertext per vector
  int paper_depth;
  std::string paper_traffic;
};

Table combine_table(const RunConfig& cfg) {
  Table t{"combine", "Comparison of different combinations (96 vectors of length 2000 over Z_4)", {}};
  constexpr std::size_t kVectors = 96;
  constexpr std::size_t kLength = 2000;
  const Simulator sim(cfg.sim);
  std::mt19937_64 rng(job_seed(cfg.seed, "combine"));
  std::vector<std::vector<double>> data;
  for (std::size_t i = 0; i < kVectors; ++i) data.push_back(as_doubles(random_digits(rng, 4, kLength)));
  const std::vector<std::size_t> sizes(kVectors, kLength);

  // Expected counts from slot arithmetic alone.
  const std::size_t per_ct = sim.slots() / kLength;
  const std::size_t concat_cts = (kVectors + per_ct - 1) / per_ct;
  const std::size_t crt_cts = (concat_cts + 2) / 3;
  const std::map<std::string, std::size_t> expected{
      {"CKKS", kVectors}, {"VecConcat", concat_cts}, {"Combine1", (concat_cts + 1) / 2}, {"Combine2", (crt_cts + 1) / 2}};

  const std::vector<CombineCase> cases{
      {"CKKS", {}, false, 25, "2492.96"},
      {"VecConcat", {ConcatStage{}}, true, 24, "156.06"},
      {"Combine1", {ConcatStage{}, ImgPairStage{}}, true, 23, "78.03"},
      {"Combine2", {ConcatStage{}, CrtStage{CrtBasis::make({4, 5, 7}, 210)}, ImgPairStage{}}, true, 13, "26.01"},
  };
  for (const auto& c : cases) {
    const PackLayout layout{c.stages};
    sim.reset_counts();
    std::vector<SlotCiphertext> recovered;
    std::size_t cts = 0;
    if (!c.packed) {
      for (const auto& v : data) recovered.push_back(sim.encrypt_real(v));
      cts = recovered.size();
    } else {
      std::vector<SlotCiphertext> enc;
      for (const auto& pt : pipeline_pack(data, layout, sim.slots())) enc.push_back(sim.encrypt(pt));
      cts = enc.size();
      recovered = pipeline_unpack(sim, enc, layout, sizes);
    }
    double worst = 0.0;
    int remaining = cfg.sim.max_level;
    for (std::size_t i = 0; i < kVectors; ++i) {
      worst = std::max(worst, slot_errors(recovered[i].slots(), data[i]).max);
      remaining = std::min(remaining, recovered[i].level());
    }
    const double mib = static_cast<double>(cts) * ciphertext_bytes(cfg.sim) / (1024.0 * 1024.0);
    t.add(c.name, "ciphertexts", static_cast<double>(cts), Check::equal(static_cast<double>(expected.at(c.name))));
    t.add(c.name, "traffic_MiB", mib, Check::info(), c.paper_traffic);
    t.add(c.name, "remaining_level", remaining, Check::at_least(c.paper_depth - 1), std::to_string(c.paper_depth));
    t.add(c.name, "max_abs_error", worst, Check::at_most(1e-4));
    t.add(c.name, "multiplications", static_cast<double>(sim.counts().multiplications()), Check::info());
  }
  return t;
}

// ---- secret shares ----

Table shares_table(const RunConfig& cfg) {
  Table t{"shares", "Secret shares conversion performance over Z_16", {}};
  constexpr long kP = 16;
  const std::vector<std::string> refs{"0.92e-08", "0.90e-08", "1.01e-08", "1.14e-08", "1.06e-08", "1.22e-08"};
  const Simulator sim(cfg.sim);
  double direct8 = 0.0;
  auto encrypt_shares = [&](const ShareSet& set) {
    std::vector<SlotCiphertext> cts;
    for (const auto& s : set.shares) cts.push_back(sim.encrypt(to_complex(s)));
    return cts;
  };
  for (std::size_t n = 3; n <= 8; ++n) {
    std::mt19937_64 rng(job_seed(cfg.seed, "shares/" + std::to_string(n)));
    const ShareSet set = ShareSet::random(kP, n, sim.slots(), rng);
    const ReconstructPlan plan = ReconstructPlan::direct(n, kP);
    sim.reset_counts();
    const SlotCiphertext out = shares_to_ct(sim, encrypt_shares(set), plan.plan);
    const ErrorStats e = slot_errors(out.slots(), as_doubles(set.secret()));
    const std::string col = std::to_string(n);
    t.add("degree", col, plan.plan.degree, Check::info(), std::to_string(32 * n));
    t.add("mean_error", col, e.mean, Check::at_most(1e-6), refs[n - 3]);
    t.add("remaining_level", col, out.level(), Check::info());
    t.add("multiplications", col, static_cast<double>(sim.counts().multiplications()), Check::info());
    if (n == 8) direct8 = e.mean;
  }
  // Same shares as the direct 8-party run.
  std::mt19937_64 rng(job_seed(cfg.seed, "shares/8"));
  const ShareSet set = ShareSet::random(kP, 8, sim.slots(), rng);
  const ReconstructPlan tree = ReconstructPlan::grouped({4, 4}, kP, 128);
  sim.reset_counts();
  const SlotCiphertext out = shares_to_ct_tree(sim, encrypt_shares(set), tree);
  const ErrorStats e = slot_errors(out.slots(), as_doubles(set.secret()));
  t.add("degree", "8*", tree.plan.degree, Check::info(), "128");
  t.add("mean_error", "8*", e.mean, Check::at_most(1e-6), "8.53e-08");
  t.add("remaining_level", "8*", out.level(), Check::info());
  t.add("multiplications", "8*", static_cast<double>(sim.counts().multiplications()), Check::info());
  t.add("tree_minus_direct_error", "8*", e.mean - direct8, Check::above(0.0));
  return t;
}

// ---- pipeline round trip (selftest) ----

Table roundtrip_table(std::uint64_t seed) {
  Table t{"roundtrip", "Concat -> CRT(9,10) -> ImgPair round trip", {}};
  SimParams params;
  params.slots = 16;
  const Simulator sim(params);
  std::mt19937_64 rng(job_seed(seed, "roundtrip"));
  const std::vector<std::size_t> sizes{8, 8, 4, 4, 16, 16};
  const std::vector<long> bound{9, 9, 10, 10, 9, 10};
  std::vector<std::vector<double>> data;
  for (std::size_t i = 0; i < sizes.size(); ++i) data.push_back(as_doubles(random_digits(rng, bound[i], sizes[i])));
  const PackLayout layout{{ConcatStage{sizes}, CrtStage{CrtBasis::make({9, 10}, 180)}, ImgPairStage{}}};
  std::vector<SlotCiphertext> enc;
  for (const auto& pt : pipeline_pack(data, layout, sim.slots())) enc.push_back(sim.encrypt(pt));
  t.add("pipeline", "ciphertexts", static_cast<double>(enc.size()), Check::equal(1));
  const auto out = pipeline_unpack(sim, enc, layout, sizes);
  double worst = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) worst = std::max(worst, slot_errors(out[i].slots(), data[i]).max);
  t.add("pipeline", "max_abs_error", worst, Check::at_most(1e-4));
  return t;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string bound_text(const Check& c) {
  switch (c.kind) {
    case CheckKind::kInfo:
      return "";
    case CheckKind::kWithin:
      return format_value(c.bound) + "+/-" + format_value(c.tolerance);
    default:
      return format_value(c.bound);
  }
}

std::string result_text(const Cell& c) {
  if (c.check.kind == CheckKind::kInfo) return "info";
  return c.passed() ? "pass" : "FAIL";
}

}  // namespace

bool Check::holds(double value) const {
  switch (kind) {
    case CheckKind::kAtMost:
      return value <= bound;
    case CheckKind::kAtLeast:
      return value >= bound;
    case CheckKind::kAbove:
      return value > bound;
    case CheckKind::kEqual:
      return value == bound;
    case CheckKind::kWithin:
      return std::abs(value - bound) <= tolerance;
    case CheckKind::kInfo:
      return true;
  }
  return false;
}

void Table::add(std::string row, std::string column, double value, Check check, std::string reference) {
  cells.push_back(Cell{std::move(row), std::move(column), value, check, std::move(reference)});
}

const Cell* Table::find(std::string_view row, std::string_view column) const {
  for (const auto& c : cells) {
    if (c.row == row && c.column == column) return &c;
  }
  return nullptr;
}

std::vector<const Cell*> Table::failures() const {
  std::vector<const Cell*> out;
  for (const auto& c : cells) {
    if (!c.passed()) out.push_back(&c);
  }
  return out;
}

std::string format_value(double v) {
  char buf[64];
  if (std::isfinite(v) && v == std::trunc(v) && std::abs(v) < 1e12) {
    std::snprintf(buf, sizeof buf, "%.0f", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.6e", v);
  }
  return buf;
}

std::string check_symbol(CheckKind kind) {
  switch (kind) {
    case CheckKind::kAtMost:
      return "<=";
    case CheckKind::kAtLeast:
      return ">=";
    case CheckKind::kAbove:
      return ">";
    case CheckKind::kEqual:
      return "==";
    case CheckKind::kWithin:
      return "within";
    case CheckKind::kInfo:
      return "info";
  }
  return "?";
}

std::string Table::to_csv() const {
  std::string out = "table,row,column,value,check,bound,result,reference\n";
  for (const auto& c : cells) {
    out += csv_escape(name) + "," + csv_escape(c.row) + "," + csv_escape(c.column) + "," + format_value(c.value) + "," +
           check_symbol(c.check.kind) + "," + bound_text(c.check) + "," + result_text(c) + "," +
           csv_escape(c.reference) + "\n";
  }
  return out;
}

std::string Table::to_markdown() const {
  std::string out = "## " + title + "\n\n| row | column | value | check | bound | result | reference |\n";
  out += "|---|---|---|---|---|---|---|\n";
  for (const auto& c : cells) {
    out += "| " + c.row + " | " + c.column + " | " + format_value(c.value) + " | " + check_symbol(c.check.kind) +
           " | " + bound_text(c.check) + " | " + result_text(c) + " | " + c.reference + " |\n";
  }
  return out;
}

RunConfig run_config_from_file(const std::filesystem::path& path) {
  const io::json j = io::read_json(path);
  RunConfig cfg;
  try {
    if (j.contains("sim")) cfg.sim = io::sim_params_from_json(j.at("sim"));
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("table")) cfg.table = j.at("table").get<std::string>();
  } catch (const io::json::exception& e) {
    throw io::FormatError(path.string() + ": " + e.what());
  }
  return cfg;
}

const std::vector<std::string>& table_names() {
  static const std::vector<std::string> names{"modp4",    "modp5",   "floor",  "bitstack",
                                              "crtstack", "combine", "shares", "depth"};
  return names;
}

std::uint64_t job_seed(std::uint64_t seed, std::string_view job) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ seed;
  for (unsigned char c : job) h = (h ^ c) * 0x100000001b3ULL;
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  return h ^ (h >> 33);
}

double ciphertext_bytes(const SimParams& params) {
  return 2.0 * static_cast<double>(2 * params.slots) * static_cast<double>(params.max_level + 1) * 8.0;
}

Table run_table(const std::string& name, const RunConfig& config) {
  static const std::map<std::string, std::function<Table(const RunConfig&)>> jobs{
      {"modp4", [](const RunConfig& c) { return modp_table(4, c); }},
      {"modp5", [](const RunConfig& c) { return modp_table(5, c); }},
      {"floor", floor_table},
      {"bitstack", bitstack_table},
      {"crtstack", crt_table},
      {"combine", combine_table},
      {"shares", shares_table},
      {"depth", depth_table},
  };
  const auto it = jobs.find(name);
  if (it == jobs.end()) throw InvariantError("unknown table \"" + name + "\"");
  const auto start = std::chrono::steady_clock::now();
  Table t = it->second(config);
  t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return t;
}

std::vector<Table> run_selftest(std::uint64_t seed) {
  RunConfig cfg;
  cfg.seed = seed;
  cfg.sim.slots = 1024;
  std::vector<Table> out;
  for (const char* name : {"modp4", "modp5", "floor", "crtstack", "shares", "depth"}) out.push_back(run_table(name, cfg));
  out.push_back(roundtrip_table(seed));
  return out;
}

}  // namespace chebmod
