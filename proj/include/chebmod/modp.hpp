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
#include "chebmod/paterson_stockmeyer.hpp"
#include "chebmod/simulator.hpp"

namespace chebmod {

enum class ScheduleRule {
  kBalanced,  // plan_schedule: k = round(sqrt(D/2))
  kMinDepth,  // plan_schedule_min_depth
};

ps::PsSchedule schedule_for(const ModPlan& plan, double output_scale, ScheduleRule rule);

/// output_scale * plan(x) slot-wise: one level for the map to [-1, 1], the
/// PS evaluation, and one level for the scale delta * output_scale.
SlotCiphertext apply_plan(const Simulator& sim, const SlotCiphertext& x, const ModPlan& plan,
                          double output_scale = 1.0, ScheduleRule rule = ScheduleRule::kMinDepth);

/// Levels apply_plan consumes.
int plan_depth(const ModPlan& plan, double output_scale = 1.0, ScheduleRule rule = ScheduleRule::kMinDepth);

/// apply_plan on plaintext scalars, through the same evaluation path.
double apply_plan_plain(const ModPlan& plan, double x, double output_scale = 1.0,
                        ScheduleRule rule = ScheduleRule::kMinDepth);

}  // namespace chebmod
