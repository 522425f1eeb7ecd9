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

#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "chebmod/fitting.hpp"
#include "chebmod/modp.hpp"
#include "chebmod/simulator.hpp"

namespace chebmod {

/// Additive shares over Z_p: secret = (sum of shares) mod p, element-wise.
struct ShareSet {
  long p = 0;
  std::vector<std::vector<long>> shares;  // one vector per party

  std::size_t parties() const { return shares.size(); }
  std::size_t length() const { return shares.empty() ? 0 : shares.front().size(); }
  void validate() const;
  std::vector<long> secret() const;

  static ShareSet random(long p, std::size_t parties, std::size_t length, std::mt19937_64& rng);
};

/// Degree used for a direct reconstruction plan: 2 n p (96..256 for 3..8
/// parties over Z_16).
int share_degree(std::size_t parties, long p);

/// Summation tree.  Leaves name a party; internal nodes sum their children
/// and reduce the sum with `plan`.
struct ReconstructPlan {
  std::optional<std::size_t> party;
  std::vector<ReconstructPlan> children;
  ModPlan plan;

  bool is_leaf() const { return party.has_value(); }
  long max_output(long p) const;  // largest value the node can emit
  std::vector<std::size_t> parties() const;
  void validate(long p, std::size_t n_parties) const;

  static ReconstructPlan leaf(std::size_t party);
  /// One node over all parties with a plan of share_degree(n, p).
  static ReconstructPlan direct(std::size_t n_parties, long p);
  /// Root over consecutive party groups of the given sizes; each group node
  /// and the root use a plan of `degree` on their own sum range.
  static ReconstructPlan grouped(const std::vector<std::size_t>& group_sizes, long p, int degree);
};

/// ModP(sum of share ciphertexts, p).
SlotCiphertext shares_to_ct(const Simulator& sim, std::span<const SlotCiphertext> shares, const ModPlan& plan);

SlotCiphertext shares_to_ct_tree(const Simulator& sim, std::span<const SlotCiphertext> shares,
                                 const ReconstructPlan& tree);

}  // namespace chebmod
