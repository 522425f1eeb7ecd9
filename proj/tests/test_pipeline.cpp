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

#include <cmath>

#include "chebmod/pipeline.hpp"
#include "support/generators.hpp"

using namespace chebmod;
using chebmod::testing::Gen;

namespace {

Simulator make_sim(std::size_t slots) {
  SimParams p;
  p.slots = slots;
  return Simulator(p);
}

std::vector<double> digits(Gen& g, std::size_t n, long bound) {
  std::vector<double> v(n);
  for (double& x : v) x = static_cast<double>(g.integer(0, bound - 1));
  return v;
}

std::vector<SlotCiphertext> encrypt_all(const Simulator& sim, const std::vector<std::vector<cplx>>& pts) {
  std::vector<SlotCiphertext> out;
  for (const auto& pt : pts) out.push_back(sim.encrypt(pt));
  return out;
}

double worst_error(const Simulator& sim, const std::vector<SlotCiphertext>& out,
                   const std::vector<std::vector<double>>& data) {
  double worst = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto v = sim.decrypt(out[i]);
    for (std::size_t j = 0; j < data[i].size(); ++j) worst = std::max(worst, std::abs(v[j] - data[i][j]));
  }
  return worst;
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("six vectors through concat, CRT(9,10) and imgpair") {
  auto sim = make_sim(16);
  Gen g(61);
  const std::vector<std::size_t> sizes{8, 8, 4, 4, 16, 16};
  const std::vector<long> bound{9, 9, 10, 10, 9, 10};
  std::vector<std::vector<double>> data;
  for (std::size_t i = 0; i < sizes.size(); ++i) data.push_back(digits(g, sizes[i], bound[i]));
  const PackLayout layout{{ConcatStage{sizes}, CrtStage{CrtBasis::make({9, 10}, 180)}, ImgPairStage{}}};
  const auto shapes = trace_shapes(layout, sizes, 16);
  REQUIRE(shapes.size() == 4);
  CHECK(shapes[1] == std::vector<std::size_t>{16, 8, 16, 16});
  CHECK(shapes[2] == std::vector<std::size_t>{16, 16});
  CHECK(shapes[3] == std::vector<std::size_t>{16});
  const auto packed = pipeline_pack(data, layout, 16);
  CHECK(packed.size() == 1);
  const auto out = pipeline_unpack(sim, encrypt_all(sim, packed), layout, sizes);
  REQUIRE(out.size() == 6);
  CHECK(worst_error(sim, out, data) <= 1e-4);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto v = sim.decrypt(out[i]);
    for (std::size_t j = sizes[i]; j < v.size(); ++j) CHECK(std::abs(v[j]) <= 1e-4);
  }
}

TEST_CASE("empty pipeline is the identity") {
  auto sim = make_sim(8);
  const std::vector<std::vector<double>> data{{1.5, -2.0}, {3.25}};
  const std::vector<std::size_t> sizes{2, 1};
  const PackLayout layout{};
  const auto packed = pipeline_pack(data, layout, 8);
  REQUIRE(packed.size() == 2);
  const auto out = pipeline_unpack(sim, encrypt_all(sim, packed), layout, sizes);
  CHECK(sim.decrypt(out[0]) == std::vector<cplx>{1.5, -2.0, 0, 0, 0, 0, 0, 0});
  CHECK(sim.decrypt(out[1]) == std::vector<cplx>{3.25, 0, 0, 0, 0, 0, 0, 0});
  CHECK(out[0].level() == sim.params().max_level);
}

TEST_CASE("concat then imgpair") {
  auto sim = make_sim(64);
  Gen g(62);
  std::vector<std::vector<double>> data;
  std::vector<std::size_t> sizes;
  for (int i = 0; i < 9; ++i) {
    sizes.push_back(static_cast<std::size_t>(g.integer(1, 30)));
    data.push_back(g.reals(sizes.back(), -3, 3));
  }
  const PackLayout layout{{ConcatStage{}, ImgPairStage{}}};
  const auto shapes = trace_shapes(layout, sizes, 64);
  const auto packed = pipeline_pack(data, layout, 64);
  CHECK(packed.size() == shapes.back().size());
  CHECK(packed.size() == (shapes[1].size() + 1) / 2);
  const auto out = pipeline_unpack(sim, encrypt_all(sim, packed), layout, sizes);
  CHECK(worst_error(sim, out, data) <= 1e-12);
  for (const auto& ct : out) CHECK(ct.level() == sim.params().max_level - 2);
}

TEST_CASE("concat then bitstack") {
  auto sim = make_sim(32);
  Gen g(63);
  std::vector<std::vector<double>> data;
  const std::vector<std::size_t> sizes{10, 20, 32, 5, 5};
  for (std::size_t s : sizes) data.push_back(digits(g, s, 4));
  const PackLayout layout{{ConcatStage{sizes}, BitStackStage{BitStackLayout::binary({2, 2}, 45)}}};
  const auto packed = pipeline_pack(data, layout, 32);
  CHECK(packed.size() == 2);
  const auto out = pipeline_unpack(sim, encrypt_all(sim, packed), layout, sizes);
  CHECK(worst_error(sim, out, data) <= 1e-4);
}

TEST_CASE("stage shape errors") {
  const std::vector<std::size_t> sizes{4, 4};
  const std::vector<std::vector<double>> data{{0, 1, 2, 3}, {3, 2, 1, 0}};
  CHECK_THROWS_AS(trace_shapes(PackLayout{{ImgPairStage{}, ConcatStage{}}}, sizes, 8), ShapeError);
  CHECK_THROWS_AS(trace_shapes(PackLayout{{ConcatStage{{4, 5}}}}, sizes, 8), ShapeError);
  CHECK_THROWS_AS(trace_shapes(PackLayout{{ConcatStage{}}}, std::vector<std::size_t>{9}, 8), ShapeError);
  CHECK_THROWS_AS(trace_shapes(PackLayout{{ImgPairStage{2, 0}}}, sizes, 8), ShapeError);
  CHECK_THROWS_AS(pipeline_pack(data, PackLayout{{CrtStage{CrtBasis::make({2, 3})}}}, 8), RangeError);
  const std::vector<std::vector<double>> frac{{0.5}};
  CHECK_THROWS_AS(pipeline_pack(frac, PackLayout{{CrtStage{CrtBasis::make({4, 5})}}}, 8), RangeError);
  auto sim = make_sim(8);
  const std::vector<SlotCiphertext> none;
  CHECK_THROWS_AS(pipeline_unpack(sim, none, PackLayout{{ConcatStage{}}}, sizes), ShapeError);
}

TEST_CASE("short final CRT group is padded with zero layers") {
  auto sim = make_sim(16);
  Gen g(64);
  const std::vector<std::size_t> sizes{16, 16, 16, 16, 16};
  std::vector<std::vector<double>> data;
  const std::vector<long> bound{4, 5, 7, 4, 5};
  for (std::size_t i = 0; i < sizes.size(); ++i) data.push_back(digits(g, sizes[i], bound[i]));
  const PackLayout layout{{CrtStage{CrtBasis::make({4, 5, 7}, 210)}}};
  const auto packed = pipeline_pack(data, layout, 16);
  CHECK(packed.size() == 2);
  const auto out = pipeline_unpack(sim, encrypt_all(sim, packed), layout, sizes);
  CHECK(out.size() == 5);
  CHECK(worst_error(sim, out, data) <= 1e-4);
}

}  // TEST_SUITE
