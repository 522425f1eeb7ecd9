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

#include "chebmod/shares.hpp"
#include "support/generators.hpp"

using namespace chebmod;
using chebmod::testing::Gen;

namespace {

Simulator make_sim(std::size_t slots = 64) {
  SimParams p;
  p.slots = slots;
  return Simulator(p);
}

std::vector<SlotCiphertext> encrypt_shares(const Simulator& sim, const ShareSet& set) {
  std::vector<SlotCiphertext> out;
  for (const auto& s : set.shares) {
    std::vector<double> v(s.begin(), s.end());
    out.push_back(sim.encrypt_real(v));
  }
  return out;
}

double mean_error(const Simulator& sim, const SlotCiphertext& ct, const std::vector<long>& secret) {
  const auto v = sim.decrypt_real(ct);
  double s = 0.0;
  for (std::size_t j = 0; j < secret.size(); ++j) s += std::abs(v[j] - static_cast<double>(secret[j]));
  return s / static_cast<double>(secret.size());
}

}  // namespace

TEST_SUITE("shares") {

TEST_CASE("small reconstructions") {
  auto sim = make_sim(4);
  ShareSet a{16, {{3}, {5}, {7}}};
  CHECK(a.secret() == std::vector<long>{15});
  const auto direct3 = ReconstructPlan::direct(3, 16);
  CHECK(std::abs(sim.decrypt_real(shares_to_ct(sim, encrypt_shares(sim, a), direct3.plan))[0] - 15.0) <= 1e-6);
  ShareSet b{16, {{10}, {12}}};
  CHECK(b.secret() == std::vector<long>{6});
  const auto direct2 = ReconstructPlan::direct(2, 16);
  CHECK(std::abs(sim.decrypt_real(shares_to_ct(sim, encrypt_shares(sim, b), direct2.plan))[0] - 6.0) <= 1e-6);
}

TEST_CASE("share validation") {
  CHECK_THROWS_AS((ShareSet{16, {{16}, {0}}}.validate()), RangeError);
  CHECK_THROWS_AS((ShareSet{16, {{1, 2}, {0}}}.validate()), ShapeError);
  CHECK_THROWS_AS((ShareSet{1, {{0}}}.validate()), InvariantError);
}

TEST_CASE("share degrees") {
  const int expect[] = {96, 128, 160, 192, 224, 256};
  for (std::size_t n = 3; n <= 8; ++n) CHECK(share_degree(n, 16) == expect[n - 3]);
}

TEST_CASE("four parties at degree 128") {
  auto sim = make_sim(256);
  Gen g(71);
  const auto set = ShareSet::random(16, 4, 256, g.engine());
  const auto plan = ReconstructPlan::direct(4, 16);
  CHECK(plan.plan.degree == 128);
  CHECK(mean_error(sim, shares_to_ct(sim, encrypt_shares(sim, set), plan.plan), set.secret()) <= 1e-6);
}

TEST_CASE("tree of two groups of four") {
  auto sim = make_sim(256);
  Gen g(72);
  const auto set = ShareSet::random(16, 8, 256, g.engine());
  const auto cts = encrypt_shares(sim, set);
  const auto tree = ReconstructPlan::grouped({4, 4}, 16, 128);
  CHECK_NOTHROW(tree.validate(16, 8));
  const double tree_err = mean_error(sim, shares_to_ct_tree(sim, cts, tree), set.secret());
  const double direct_err = mean_error(sim, shares_to_ct(sim, cts, ReconstructPlan::direct(8, 16).plan), set.secret());
  CHECK(tree_err <= 1e-6);
  CHECK(tree_err > direct_err);
}

TEST_CASE("single-node tree equals direct reconstruction") {
  auto sim = make_sim(64);
  Gen g(73);
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto set = ShareSet::random(16, n, 64, g.engine());
    const auto cts = encrypt_shares(sim, set);
    const auto plan = ReconstructPlan::direct(n, 16);
    CHECK(sim.decrypt(shares_to_ct_tree(sim, cts, plan)) == sim.decrypt(shares_to_ct(sim, cts, plan.plan)));
  }
}

TEST_CASE("two leaves under one root") {
  auto sim = make_sim(64);
  Gen g(74);
  const auto set = ShareSet::random(16, 2, 64, g.engine());
  ReconstructPlan root;
  root.children = {ReconstructPlan::leaf(1), ReconstructPlan::leaf(0)};
  root.plan = fit_modp(16, 30, 64);
  const auto out = sim.decrypt_real(shares_to_ct_tree(sim, encrypt_shares(sim, set), root));
  for (std::size_t j = 0; j < 64; ++j) {
    CHECK(std::lround(out[j]) == (set.shares[0][j] + set.shares[1][j]) % 16);
  }
}

TEST_CASE("interval overflow") {
  auto sim = make_sim(8);
  Gen g(75);
  const auto set = ShareSet::random(16, 4, 8, g.engine());
  const auto cts = encrypt_shares(sim, set);
  CHECK_THROWS_AS(shares_to_ct(sim, cts, ReconstructPlan::direct(3, 16).plan), RangeError);
  auto tree = ReconstructPlan::grouped({2, 2}, 16, 64);
  tree.plan = fit_modp(16, 20, 40);
  CHECK_THROWS_AS(shares_to_ct_tree(sim, cts, tree), RangeError);
}

TEST_CASE("tree must partition the parties") {
  auto sim = make_sim(8);
  Gen g(76);
  const auto cts = encrypt_shares(sim, ShareSet::random(16, 4, 8, g.engine()));
  auto tree = ReconstructPlan::grouped({2, 2}, 16, 64);
  tree.children[1].children[1] = ReconstructPlan::leaf(0);
  CHECK_THROWS_AS(shares_to_ct_tree(sim, cts, tree), ShapeError);
  CHECK_THROWS_AS(shares_to_ct_tree(sim, cts, ReconstructPlan::leaf(0)), ShapeError);
  auto wrong = ReconstructPlan::grouped({2, 2}, 16, 64);
  wrong.children[0].plan = fit_modp(8, 14, 40);
  CHECK_THROWS_AS(shares_to_ct_tree(sim, cts, wrong), InvariantError);
}

TEST_CASE("500 random share sets decode exactly") {
  auto sim = make_sim(64);
  Gen g(77);
  std::vector<ReconstructPlan> direct;
  for (std::size_t n = 0; n <= 8; ++n) direct.push_back(n >= 3 ? ReconstructPlan::direct(n, 16) : ReconstructPlan{});
  const auto tree = ReconstructPlan::grouped({4, 4}, 16, 128);
  int failures = 0;
  for (int t = 0; t < 500; ++t) {
    const auto n = static_cast<std::size_t>(g.integer(3, 8));
    const auto set = ShareSet::random(16, n, 64, g.engine());
    const auto secret = set.secret();
    const auto cts = encrypt_shares(sim, set);
    const auto out = sim.decrypt_real(shares_to_ct(sim, cts, direct[n].plan));
    for (std::size_t j = 0; j < 64; ++j) failures += (std::lround(out[j]) != secret[j]);
    if (n == 8 && t % 5 == 0) {
      const auto tout = sim.decrypt_real(shares_to_ct_tree(sim, cts, tree));
      for (std::size_t j = 0; j < 64; ++j) failures += (std::lround(tout[j]) != std::lround(out[j]));
    }
  }
  CHECK(failures == 0);
}

}  // TEST_SUITE
