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

#include <span>
#include <vector>

#include "chebmod/errors.hpp"

namespace chebmod {

// Inputs this far outside [-1, 1] are clamped instead of rejected.
inline constexpr double kUnitClampTolerance = 1e-12;
// Slack allowed when mapping a source-domain point in [0, B].
inline constexpr double kSourceDomainSlack = 1e-9;

/// First-kind Chebyshev expansion sum_i coeffs[i] * T_i(2x/B - 1) over the
/// source interval [0, domain_upper].
struct ChebSeries {
  std::vector<double> coeffs;
  double domain_upper = 1.0;

  ChebSeries() : coeffs{0.0} {}
  ChebSeries(std::vector<double> c, double upper);

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// T_n(x) by the three-term recurrence.  Throws DomainError for n < 0 or
/// |x| > 1 + kUnitClampTolerance.
double chebyshev_t(int n, double x);

/// Affine map [0, upper] -> [-1, 1], x -> 2x/upper - 1.
double map_to_unit(double x, double upper);

/// Clenshaw backward recurrence on already-mapped input u in [-1, 1].
double eval_clenshaw_unit(std::span<const double> coeffs, double u);

/// Plaintext reference evaluator of a series at a source-domain point.
double eval_clenshaw(const ChebSeries& series, double x);

}  // namespace chebmod
