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
#include "chebmod/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace chebmod::io {

namespace fs = std::filesystem;

namespace {

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

std::vector<ModPlan> plans_for_stage(const json& stage, const fs::path& base_dir, std::size_t layers,
                                     const std::vector<long>& moduli, const std::vector<long>& uppers) {
  std::vector<ModPlan> plans;
  if (stage.contains("plan_files")) {
    for (const auto& f : stage.at("plan_files")) plans.push_back(read_plan(base_dir / f.get<std::string>()));
    if (plans.size() != layers) throw FormatError("stage lists " + std::to_string(plans.size()) + " plan files, needs " +
                                                  std::to_string(layers));
    for (std::size_t i = 0; i < layers; ++i) {
      if (plans[i].modulus != moduli[i] || plans[i].upper < uppers[i]) {
        throw FormatError("plan file " + std::to_string(i) + " does not match its layer");
      }
    }
  } else if (stage.contains("degree")) {
    const int degree = stage.at("degree").get<int>();
    for (std::size_t i = 0; i < layers; ++i) plans.push_back(fit_modp(moduli[i], uppers[i], degree));
  } else {
    throw FormatError("stack stage needs \"plan_files\" or \"degree\"");
  }
  return plans;
}

PackStage stage_from_json(const json& s, const fs::path& base_dir) {
  const std::string kind = s.at("kind").get<std::string>();
  if (kind == "concat") return ConcatStage{get_or(s, "sizes", std::vector<std::size_t>{})};
  if (kind == "imgpair") return ImgPairStage{get_or<std::size_t>(s, "n1", 0), get_or<std::size_t>(s, "n2", 0)};
  if (kind == "crt") {
    CrtBasis basis = CrtBasis::make(s.at("moduli").get<std::vector<long>>());
    const std::vector<long> uppers(basis.moduli.size(), basis.product - 1);
    basis.plans = plans_for_stage(s, base_dir, basis.moduli.size(), basis.moduli, uppers);
    return CrtStage{std::move(basis)};
  }
  if (kind == "bitstack") {
    BitStackLayout layout;
    if (s.contains("radices")) {
      layout.radices = s.at("radices").get<std::vector<long>>();
    } else {
      for (int l : s.at("bit_widths").get<std::vector<int>>()) {
        if (l < 1 || l > 24) throw FormatError("bit width out of range");
        layout.radices.push_back(1L << l);
      }
    }
    layout.validate();
    const std::size_t layers = layout.layers() - 1;  // the last layer needs no plan
    std::vector<long> uppers;
    for (std::size_t i = 0; i < layers; ++i) uppers.push_back(layout.range_from(i) - 1);
    std::vector<long> mods(layout.radices.begin(), layout.radices.begin() + static_cast<std::ptrdiff_t>(layers));
    if (layers > 0) {
      layout.plans = plans_for_stage(s, base_dir, layers, mods, uppers);
    }
    return BitStackStage{std::move(layout)};
  }
  throw FormatError("unknown stage kind \"" + kind + "\"");
}

}  // namespace

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
  if (!out) throw FormatError("write failed for " + path.string());
}

json plan_to_json(const ModPlan& plan) {
  return json{{"p", plan.modulus},     {"B", plan.upper},           {"D", plan.degree},
              {"delta", plan.delta},   {"residual", plan.residual}, {"coeffs", plan.series.coeffs}};
}

ModPlan plan_from_json(const json& j) {
  try {
    ModPlan plan;
    plan.modulus = j.at("p").get<long>();
    plan.upper = j.at("B").get<long>();
    plan.degree = j.at("D").get<int>();
    plan.delta = j.at("delta").get<double>();
    plan.residual = j.at("residual").get<double>();
    plan.series = ChebSeries(j.at("coeffs").get<std::vector<double>>(), static_cast<double>(plan.upper));
    if (plan.series.degree() != plan.degree) throw FormatError("coefficient count does not match D");
    if (plan.max_abs_coefficient() >= 1.0) throw FormatError("plan has a coefficient with magnitude >= 1");
    if (plan.modulus >= 2) plan.mean_error = modp_errors(plan).second;
    return plan;
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad plan: ") + e.what());
  }
}

void write_plan(const fs::path& path, const ModPlan& plan) { write_text(path, plan_to_json(plan).dump(2) + "\n"); }

ModPlan read_plan(const fs::path& path) {
  try {
    return plan_from_json(read_json(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

json sim_params_to_json(const SimParams& params) {
  return json{{"n", params.slots},
              {"max_level", params.max_level},
              {"noise_stddev", params.noise_stddev},
              {"seed", params.seed},
              {"scale_bits", params.scale_bits},
              {"first_mod_bits", params.first_mod_bits}};
}

SimParams sim_params_from_json(const json& j) {
  SimParams p;
  try {
    p.slots = get_or(j, "n", p.slots);
    p.max_level = get_or(j, "max_level", p.max_level);
    p.noise_stddev = get_or(j, "noise_stddev", p.noise_stddev);
    p.seed = get_or(j, "seed", p.seed);
    p.scale_bits = get_or(j, "scale_bits", p.scale_bits);
    p.first_mod_bits = get_or(j, "first_mod_bits", p.first_mod_bits);
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad simulator parameters: ") + e.what());
  }
  p.validate();
  return p;
}

PackLayout layout_from_json(const json& j, const fs::path& base_dir) {
  PackLayout layout;
  try {
    for (const auto& s : j.at("stages")) layout.stages.push_back(stage_from_json(s, base_dir));
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad layout: ") + e.what());
  }
  return layout;
}

PackLayout read_layout(const fs::path& path) { return layout_from_json(read_json(path), path.parent_path()); }

ReconstructPlan reconstruct_plan_from_json(const json& j, const fs::path& base_dir) {
  try {
    if (j.contains("party")) return ReconstructPlan::leaf(j.at("party").get<std::size_t>());
    ReconstructPlan node;
    for (const auto& c : j.at("children")) node.children.push_back(reconstruct_plan_from_json(c, base_dir));
    node.plan = read_plan(base_dir / j.at("plan_file").get<std::string>());
    return node;
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad reconstruction plan: ") + e.what());
  }
}

json reconstruct_plan_to_json(const ReconstructPlan& plan, const fs::path& base_dir, const std::string& stem) {
  if (plan.is_leaf()) return json{{"party", *plan.party}};
  json children = json::array();
  for (std::size_t i = 0; i < plan.children.size(); ++i) {
    children.push_back(reconstruct_plan_to_json(plan.children[i], base_dir, stem + "_" + std::to_string(i)));
  }
  const std::string file = stem + ".json";
  write_plan(base_dir / file, plan.plan);
  return json{{"children", children}, {"plan_file", file}};
}

std::vector<std::vector<cplx>> parse_data(const std::string& text) {
  std::vector<std::vector<cplx>> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      if (!j.is_array()) throw FormatError("not an array");
      std::vector<cplx> row;
      for (const auto& e : j) {
        if (e.is_number()) {
          row.emplace_back(e.get<double>(), 0.0);
        } else if (e.is_array() && e.size() == 2) {
          row.emplace_back(e[0].get<double>(), e[1].get<double>());
        } else {
          throw FormatError("element is neither a number nor a [re, im] pair");
        }
      }
      rows.push_back(std::move(row));
    } catch (const std::exception& e) {
      throw FormatError("data line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return rows;
}

std::vector<std::vector<cplx>> read_data(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_data(buf.str());
}

std::string format_data(const std::vector<std::vector<cplx>>& rows) {
  std::string out;
  for (const auto& row : rows) {
    json j = json::array();
    for (const cplx& v : row) {
      if (v.imag() == 0.0 && v.real() == std::trunc(v.real()) && std::abs(v.real()) < 9.0e15) {
        j.push_back(static_cast<long long>(v.real()));
      } else if (v.imag() == 0.0) {
        j.push_back(v.real());
      } else {
        j.push_back(json::array({v.real(), v.imag()}));
      }
    }
    out += j.dump() + "\n";
  }
  return out;
}

void write_data(const fs::path& path, const std::vector<std::vector<cplx>>& rows) {
  write_text(path, format_data(rows));
}

}  // namespace chebmod::io
