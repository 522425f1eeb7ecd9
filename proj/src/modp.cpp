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
#include "chebmod/modp.hpp"

namespace chebmod {

ps::PsSchedule schedule_for(const ModPlan& plan, double output_scale, ScheduleRule rule) {
  ps::PsSchedule s = rule == ScheduleRule::kBalanced ? ps::plan_schedule(plan.degree)
                                                     : ps::plan_schedule_min_depth(plan.degree);
  s.folded_scale = plan.delta * output_scale;
  return s;
}

SlotCiphertext apply_plan(const Simulator& sim, const SlotCiphertext& x, const ModPlan& plan, double output_scale,
                          ScheduleRule rule) {
  const SimBackend be{sim};
  const SlotCiphertext u = sim.add_const(sim.mul_const(x, 2.0 / static_cast<double>(plan.upper)), -1.0);
  return ps::eval_ps(be, plan.series, u, schedule_for(plan, output_scale, rule));
}

int plan_depth(const ModPlan& plan, double output_scale, ScheduleRule rule) {
  return 1 + ps::predicted_depth(schedule_for(plan, output_scale, rule), plan.series.degree());
}

double apply_plan_plain(const ModPlan& plan, double x, double output_scale, ScheduleRule rule) {
  const double u = 2.0 / static_cast<double>(plan.upper) * x - 1.0;
  return ps::eval_ps(ps::PlainBackend{}, plan.series, u, schedule_for(plan, output_scale, rule));
}

}  // namespace chebmod
