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
#include "chebmod/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace chebmod {

namespace {

double clamp_unit(double x) {
  if (!(std::abs(x) <= 1.0 + kUnitClampTolerance)) {
    throw DomainError("Chebyshev argument outside [-1, 1]: " + std::to_string(x));
  }
  return std::clamp(x, -1.0, 1.0);
}

}  // namespace

ChebSeries::ChebSeries(std::vector<double> c, double upper)
    : coeffs(std::move(c)), domain_upper(upper) {
  if (coeffs.empty()) throw InvariantError("ChebSeries needs at least one coefficient");
  if (!(domain_upper > 0.0)) throw InvariantError("ChebSeries domain upper bound must be positive");
}

double chebyshev_t(int n, double x) {
  if (n < 0) throw DomainError("Chebyshev index must be non-negative");
  x = clamp_unit(x);
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int i = 2; i <= n; ++i) {
    double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double map_to_unit(double x, double upper) {
  if (!(upper > 0.0)) throw DomainError("interval upper bound must be positive");
  if (x < -kSourceDomainSlack || x > upper + kSourceDomainSlack) {
    throw DomainError("point " + std::to_string(x) + " outside [0, " + std::to_string(upper) + "]");
  }
  return std::clamp(2.0 * x / upper - 1.0, -1.0, 1.0);
}

double eval_clenshaw_unit(std::span<const double> coeffs, double u) {
  u = clamp_unit(u);
  if (coeffs.empty()) return 0.0;
  // b_k = c_k + 2u b_{k+1} - b_{k+2}; result = c_0 + u b_1 - b_2
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t k = coeffs.size() - 1; k >= 1; --k) {
    double b0 = coeffs[k] + 2.0 * u * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return coeffs[0] + u * b1 - b2;
}

double eval_clenshaw(const ChebSeries& series, double x) {
  return eval_clenshaw_unit(series.coeffs, map_to_unit(x, series.domain_upper));
}

}  // namespace chebmod
