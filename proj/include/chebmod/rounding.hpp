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

#include "chebmod/fitting.hpp"
#include "chebmod/modp.hpp"
#include "chebmod/simulator.hpp"

namespace chebmod {

/// Indicator r > threshold at the integers r = 0..p-1, as a step fit.
ModPlan fit_comparison(long p, double threshold, int degree);

/// Degree used for comparison fits when none is given.
int default_comparison_degree(long p);

struct RoundingPlans {
  long p = 0;
  ModPlan modp;        // x mod p over the input interval
  ModPlan ceil_step;   // r > 0.5
  ModPlan round_step;  // r > p/2 - 0.25

  static RoundingPlans make(long p, long upper, int degree);
};

/// (1/p)(x - ModP(x, p)), with 1/p folded into the ModP scale.
SlotCiphertext floor_he(const Simulator& sim, const SlotCiphertext& ct, long p, const ModPlan& plan);

/// ~1 where the integer-valued slot exceeds the threshold of `step`, ~0
/// elsewhere.  Inputs must be (near) integers in [0, p).
SlotCiphertext comp_step(const Simulator& sim, const SlotCiphertext& ct, double threshold, long p,
                         const ModPlan& step);

/// Floor(x, p) + comp(ModP(x, p), 0.5).
SlotCiphertext ceil_he(const Simulator& sim, const SlotCiphertext& ct, const RoundingPlans& plans);

/// Floor(x, p) + comp(ModP(x, p), p/2 - 0.25): round half up.
SlotCiphertext round_he(const Simulator& sim, const SlotCiphertext& ct, const RoundingPlans& plans);

}  // namespace chebmod
