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
#include "chebmod/shares.hpp"

#include <algorithm>
#include <string>

namespace chebmod {

void ShareSet::validate() const {
  if (p < 2) throw InvariantError("share modulus must be at least 2");
  for (std::size_t i = 0; i < shares.size(); ++i) {
    if (shares[i].size() != length()) throw ShapeError("share vectors differ in length");
    for (std::size_t j = 0; j < shares[i].size(); ++j) {
      if (shares[i][j] < 0 || shares[i][j] >= p) {
        throw RangeError("party " + std::to_string(i) + ", element " + std::to_string(j) + ": share outside Z_p");
      }
    }
  }
}

std::vector<long> ShareSet::secret() const {
  validate();
  std::vector<long> out(length(), 0);
  for (const auto& s : shares) {
    for (std::size_t j = 0; j < s.size(); ++j) out[j] = (out[j] + s[j]) % p;
  }
  return out;
}

ShareSet ShareSet::random(long p, std::size_t parties, std::size_t length, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> dist(0, p - 1);
  ShareSet set{p, std::vector<std::vector<long>>(parties, std::vector<long>(length))};
  for (auto& s : set.shares) {
    for (long& v : s) v = dist(rng);
  }
  return set;
}

int share_degree(std::size_t parties, long p) { return static_cast<int>(2 * static_cast<long>(parties) * p); }

long ReconstructPlan::max_output(long p) const { return p - 1; }

namespace {

void check_moduli(const ReconstructPlan& node, long p) {
  if (node.is_leaf()) return;
  if (node.plan.modulus != p) throw InvariantError("tree node plan has the wrong modulus");
  for (const auto& c : node.children) check_moduli(c, p);
}

}  // namespace

std::vector<std::size_t> ReconstructPlan::parties() const {
  if (is_leaf()) return {*party};
  std::vector<std::size_t> out;
  for (const auto& c : children) {
    auto sub = c.parties();
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

void ReconstructPlan::validate(long p, std::size_t n_parties) const {
  auto covered = parties();
  std::sort(covered.begin(), covered.end());
  if (covered.size() != n_parties || std::adjacent_find(covered.begin(), covered.end()) != covered.end() ||
      (!covered.empty() && covered.back() >= n_parties)) {
    throw ShapeError("reconstruction tree does not partition the parties");
  }
  check_moduli(*this, p);
}

ReconstructPlan ReconstructPlan::leaf(std::size_t party) {
  ReconstructPlan node;
  node.party = party;
  return node;
}

ReconstructPlan ReconstructPlan::direct(std::size_t n_parties, long p) {
  ReconstructPlan node;
  for (std::size_t i = 0; i < n_parties; ++i) node.children.push_back(leaf(i));
  const long range = static_cast<long>(n_parties) * (p - 1);
  node.plan = fit_modp(p, range, share_degree(n_parties, p));
  return node;
}

ReconstructPlan ReconstructPlan::grouped(const std::vector<std::size_t>& group_sizes, long p, int degree) {
  ReconstructPlan root;
  std::size_t next = 0;
  for (std::size_t g : group_sizes) {
    ReconstructPlan node;
    for (std::size_t i = 0; i < g; ++i) node.children.push_back(leaf(next++));
    node.plan = fit_modp(p, static_cast<long>(g) * (p - 1), degree);
    root.children.push_back(std::move(node));
  }
  root.plan = fit_modp(p, static_cast<long>(group_sizes.size()) * (p - 1), degree);
  return root;
}

namespace {

SlotCiphertext sum_all(const Simulator& sim, std::span<const SlotCiphertext> cts) {
  if (cts.empty()) throw ShapeError("nothing to reconstruct");
  SlotCiphertext acc = cts.front();
  for (std::size_t i = 1; i < cts.size(); ++i) acc = sim.add(acc, cts[i]);
  return acc;
}

void check_interval(const ModPlan& plan, long needed) {
  if (plan.upper < needed) {
    throw RangeError("interval overflow: sum reaches " + std::to_string(needed) + " but plan covers [0, " +
                     std::to_string(plan.upper) + "]");
  }
}

SlotCiphertext eval_node(const Simulator& sim, std::span<const SlotCiphertext> shares, const ReconstructPlan& node,
                         long p) {
  if (node.is_leaf()) return shares[*node.party];
  std::vector<SlotCiphertext> parts;
  long needed = 0;
  for (const auto& c : node.children) {
    parts.push_back(eval_node(sim, shares, c, p));
    needed += c.max_output(p);
  }
  check_interval(node.plan, needed);
  return apply_plan(sim, sum_all(sim, parts), node.plan);
}

}  // namespace

SlotCiphertext shares_to_ct(const Simulator& sim, std::span<const SlotCiphertext> shares, const ModPlan& plan) {
  if (plan.modulus < 2) throw InvariantError("share reconstruction needs a modulus plan");
  check_interval(plan, static_cast<long>(shares.size()) * (plan.modulus - 1));
  return apply_plan(sim, sum_all(sim, shares), plan);
}

SlotCiphertext shares_to_ct_tree(const Simulator& sim, std::span<const SlotCiphertext> shares,
                                 const ReconstructPlan& tree) {
  if (tree.is_leaf()) throw ShapeError("reconstruction tree needs an internal root");
  const long p = tree.plan.modulus;
  tree.validate(p, shares.size());
  return eval_node(sim, shares, tree, p);
}

}  // namespace chebmod
