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
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "chebmod/io.hpp"

using namespace chebmod;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("chebmod_cli_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

struct Run {
  int code;
  std::string output;
};

Run cli(const TempDir& dir, const std::string& args) {
  const fs::path log = dir.path / "log.txt";
  const std::string cmd = std::string("\"") + CHEBMOD_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(log);
  std::stringstream buf;
  buf << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, buf.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

void write_figure_example(const TempDir& dir) {
  io::write_text(dir.path / "layout.json",
                 R"({"stages":[{"kind":"concat","sizes":[8,8,4,4,16,16]},)"
                 R"({"kind":"crt","moduli":[9,10],"degree":180},{"kind":"imgpair"}]})");
  std::mt19937_64 rng(5);
  const std::size_t sizes[] = {8, 8, 4, 4, 16, 16};
  const long bound[] = {9, 9, 10, 10, 9, 10};
  std::string data;
  for (int i = 0; i < 6; ++i) {
    data += "[";
    for (std::size_t j = 0; j < sizes[i]; ++j) {
      data += (j ? "," : "") + std::to_string(std::uniform_int_distribution<long>(0, bound[i] - 1)(rng));
    }
    data += "]\n";
  }
  io::write_text(dir.path / "data.txt", data);
}

}  // namespace

TEST_CASE("fit writes a plan") {
  TempDir dir;
  const auto r = cli(dir, "fit --p 4 --B 29 --D 45 --delta 100 --out " + q(dir.path / "p4.json"));
  CHECK(r.code == 0);
  const ModPlan plan = io::read_plan(dir.path / "p4.json");
  CHECK(plan.mean_error <= 1e-6);
  CHECK(plan.delta == 100.0);
  CHECK(r.output.find("residual") != std::string::npos);
}

TEST_CASE("fit with a modulus above the interval") {
  TempDir dir;
  CHECK(cli(dir, "fit --p 31 --B 29 --D 35 --out " + q(dir.path / "id.json")).code == 0);
  CHECK(io::read_plan(dir.path / "id.json").residual <= 1e-6);
}

TEST_CASE("fit without delta records the suggested value") {
  TempDir dir;
  CHECK(cli(dir, "fit --p 4 --B 29 --D 35 --out " + q(dir.path / "auto.json")).code == 0);
  const ModPlan plan = io::read_plan(dir.path / "auto.json");
  const double raw = plan.max_abs_coefficient() * plan.delta;
  CHECK(plan.delta == suggest_delta(std::vector<double>{raw}, 0.5));
}

TEST_CASE("fit errors exit nonzero") {
  TempDir dir;
  CHECK(cli(dir, "fit --p 4 --B 29 --D 20 --out " + q(dir.path / "bad.json")).code != 0);
  CHECK(cli(dir, "fit --p 4 --B 29 --D 35 --delta 1 --out " + q(dir.path / "bad.json")).code != 0);
  CHECK(cli(dir, "fit --p 4").code == 2);
  CHECK(cli(dir, "").code == 2);
  CHECK(cli(dir, "frobnicate").code == 2);
}

TEST_CASE("pack and unpack the six-vector example") {
  TempDir dir;
  write_figure_example(dir);
  const auto p = cli(dir, "pack --slots 16 --layout " + q(dir.path / "layout.json") + " --data " +
                              q(dir.path / "data.txt") + " --out " + q(dir.path / "packed.txt"));
  REQUIRE(p.code == 0);
  CHECK(io::read_data(dir.path / "packed.txt").size() == 1);
  const auto u = cli(dir, "unpack --slots 16 --layout " + q(dir.path / "layout.json") + " --packed " +
                              q(dir.path / "packed.txt") + " --data " + q(dir.path / "data.txt") + " --out " +
                              q(dir.path / "recovered.txt"));
  CHECK(u.code == 0);
  CHECK(u.output.find("remaining_level") != std::string::npos);
  const auto orig = io::read_data(dir.path / "data.txt");
  const auto back = io::read_data(dir.path / "recovered.txt");
  REQUIRE(back.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    REQUIRE(back[i].size() == orig[i].size());
    for (std::size_t j = 0; j < orig[i].size(); ++j) CHECK(std::abs(back[i][j] - orig[i][j]) <= 1e-4);
  }
}

TEST_CASE("empty data") {
  TempDir dir;
  write_figure_example(dir);
  io::write_text(dir.path / "empty.txt", "");
  io::write_text(dir.path / "concat.json", R"({"stages":[{"kind":"concat"}]})");
  const auto p = cli(dir, "pack --slots 16 --layout " + q(dir.path / "concat.json") + " --data " +
                              q(dir.path / "empty.txt") + " --out " + q(dir.path / "packed.txt"));
  CHECK(p.code == 0);
  CHECK(slurp(dir.path / "packed.txt").empty());
  const auto u = cli(dir, "unpack --slots 16 --layout " + q(dir.path / "concat.json") + " --packed " +
                              q(dir.path / "packed.txt") + " --data " + q(dir.path / "empty.txt") + " --out " +
                              q(dir.path / "out.txt"));
  CHECK(u.code == 0);
  CHECK(slurp(dir.path / "out.txt").empty());
}

TEST_CASE("out-of-range element names its position") {
  TempDir dir;
  write_figure_example(dir);
  io::write_text(dir.path / "bad.txt", "[0,1,2,3,4,5,6,7]\n[0,1,2,3,4,5,6,7]\n[0,1,2,12]\n[0,1,2,3]\n");
  io::write_text(dir.path / "crt.json", R"({"stages":[{"kind":"crt","moduli":[9,10],"degree":180}]})");
  const auto r = cli(dir, "pack --slots 16 --layout " + q(dir.path / "crt.json") + " --data " +
                              q(dir.path / "bad.txt") + " --out " + q(dir.path / "packed.txt"));
  CHECK(r.code != 0);
  CHECK(r.output.find("element 3") != std::string::npos);
}

TEST_CASE("table exit codes and reproducible csv") {
  TempDir dir;
  io::write_text(dir.path / "cfg.json", R"({"sim":{"n":1024},"seed":4})");
  const auto a = cli(dir, "table --name depth --config " + q(dir.path / "cfg.json") + " --out " + q(dir.path / "a"));
  CHECK(a.code == 0);
  const auto b = cli(dir, "table --name depth --config " + q(dir.path / "cfg.json") + " --out " + q(dir.path / "b"));
  CHECK(b.code == 0);
  CHECK(slurp(dir.path / "a" / "depth.csv") == slurp(dir.path / "b" / "depth.csv"));
  CHECK(fs::exists(dir.path / "a" / "depth.md"));

  io::write_text(dir.path / "short.json", R"({"sim":{"n":1024,"max_level":20},"seed":4})");
  const auto f = cli(dir, "table --name depth --config " + q(dir.path / "short.json") + " --out " + q(dir.path / "c"));
  CHECK(f.code == 1);
  CHECK(f.output.find("FAIL") != std::string::npos);

  CHECK(cli(dir, "table --name nosuch --out " + q(dir.path / "d")).code == 2);
}

TEST_CASE("selftest") {
  TempDir dir;
  CHECK(cli(dir, "selftest --seed 2").code == 0);
}
