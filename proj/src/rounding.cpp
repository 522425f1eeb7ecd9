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
#include "chebmod/rounding.hpp"

#include <cmath>
#include <string>

#include "chebmod/paterson_stockmeyer.hpp"

namespace chebmod {

namespace {

struct FloorParts {
  SlotCiphertext floor;
  SlotCiphertext remainder;  // ModP(x, p)
};

FloorParts floor_parts(const Simulator& sim, const SlotCiphertext& ct, long p, const ModPlan& plan) {
  if (plan.modulus != p) throw InvariantError("plan modulus differs from rounding modulus");
  const double inv = 1.0 / static_cast<double>(p);
  SlotCiphertext rem_over_p = apply_plan(sim, ct, plan, inv);
  SlotCiphertext floor = sim.sub(sim.mul_const(ct, inv), rem_over_p);
  SlotCiphertext rem = ps::mul_by_int_additively(SimBackend{sim}, rem_over_p, p);
  return {std::move(floor), std::move(rem)};
}

double step_threshold(const ModPlan& step) {
  // The fitted indicator jumps between the last 0 sample and the first 1.
  for (long r = 0; r <= step.upper; ++r) {
    if (std::abs(step.evaluate(static_cast<double>(r)) - 1.0) < 0.5) return static_cast<double>(r) - 0.5;
  }
  return static_cast<double>(step.upper) + 0.5;
}

}  // namespace

int default_comparison_degree(long p) { return static_cast<int>(2 * p); }

ModPlan fit_comparison(long p, double threshold, int degree) {
  if (p < 2) throw InvariantError("comparison modulus must be at least 2");
  StepSpec spec;
  spec.upper = p - 1;
  spec.degree = degree;
  for (long r = 0; r < p; ++r) spec.samples.emplace_back(r, static_cast<double>(r) > threshold ? 1.0 : 0.0);
  return fit_step_auto(spec);
}

RoundingPlans RoundingPlans::make(long p, long upper, int degree) {
  RoundingPlans plans;
  plans.p = p;
  plans.modp = fit_modp(p, upper, degree);
  const int step_degree = default_comparison_degree(p);
  plans.ceil_step = fit_comparison(p, 0.5, step_degree);
  plans.round_step = fit_comparison(p, static_cast<double>(p) / 2.0 - 0.25, step_degree);
  return plans;
}

SlotCiphertext floor_he(const Simulator& sim, const SlotCiphertext& ct, long p, const ModPlan& plan) {
  return floor_parts(sim, ct, p, plan).floor;
}

SlotCiphertext comp_step(const Simulator& sim, const SlotCiphertext& ct, double threshold, long p,
                         const ModPlan& step) {
  if (step.upper != p - 1) throw InvariantError("comparison plan does not cover [0, p - 1]");
  if (std::floor(step_threshold(step)) != std::floor(threshold)) {
    throw InvariantError("comparison plan was fitted for a different threshold");
  }
  return apply_plan(sim, ct, step);
}

SlotCiphertext ceil_he(const Simulator& sim, const SlotCiphertext& ct, const RoundingPlans& plans) {
  FloorParts parts = floor_parts(sim, ct, plans.p, plans.modp);
  return sim.add(parts.floor, comp_step(sim, parts.remainder, 0.5, plans.p, plans.ceil_step));
}

SlotCiphertext round_he(const Simulator& sim, const SlotCiphertext& ct, const RoundingPlans& plans) {
  FloorParts parts = floor_parts(sim, ct, plans.p, plans.modp);
  const double t = static_cast<double>(plans.p) / 2.0 - 0.25;
  return sim.add(parts.floor, comp_step(sim, parts.remainder, t, plans.p, plans.round_step));
}

}  // namespace chebmod
