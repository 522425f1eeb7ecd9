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
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "chebmod/chebyshev.hpp"

namespace chebmod {

// Samples of an integer-abscissa target function on [0, upper].
struct StepSpec {
  std::vector<std::pair<long, double>> samples;
  long upper = 0;
  int degree = 0;

  void validate() const;
};

struct LinearSystem {
  Eigen::MatrixXd a;  // rows: samples, columns: T_0..T_D
  Eigen::VectorXd y;
};

// Gram matrices whose eigenvalue ratio exceeds this are rejected.
inline constexpr double kMaxGramCondition = 1e14;

/// A[j][i] = T_i(2 x_j / B - 1), y[j] = y_j.
LinearSystem build_system(const StepSpec& spec);

/// Minimum-l2-norm solution of an underdetermined full-row-rank system via
/// alpha = A^T (A A^T)^{-1} y, with one step of iterative refinement.
Eigen::VectorXd solve_min_norm(const Eigen::MatrixXd& a, const Eigen::VectorXd& y);

/// Smallest power of ten delta >= 1 with max|alpha| / delta <= headroom.
double suggest_delta(std::span<const double> alpha, double headroom);

/// 1000 for the degree-35 fits on [0, 29], 100 otherwise.
double default_delta(long upper, int degree);

/// Fitted, scaled approximation: value(x) = delta * sum beta_i T_i(2x/B - 1).
struct ModPlan {
  long modulus = 0;  // 0 for generic step fits
  long upper = 0;
  int degree = 0;
  double delta = 1.0;
  double residual = 0.0;  // max integer-point error of the scaled series
  double mean_error = 0.0;
  ChebSeries series;  // beta coefficients, domain [0, upper]

  double evaluate(double x) const { return delta * eval_clenshaw(series, x); }
  double max_abs_coefficient() const;
};

ModPlan fit_step(const StepSpec& spec, double delta);

/// fit_step with delta = suggest_delta(alpha, headroom).
ModPlan fit_step_auto(const StepSpec& spec, double headroom = 0.5);

/// Fits x -> x mod p at the integers 0..upper.  Requires degree > upper.
ModPlan fit_modp(long p, long upper, int degree, double delta);

/// Same, with default_delta() and a suggest_delta() fallback when the
/// default would leave a scaled coefficient at or above 1.
ModPlan fit_modp(long p, long upper, int degree);

/// Same, with delta = suggest_delta(alpha, headroom).
ModPlan fit_modp_auto(long p, long upper, int degree, double headroom = 0.5);

/// Integer-point errors of a modulus plan, recomputed from its series.
std::pair<double, double> modp_errors(const ModPlan& plan);  // (max, mean)

}  // namespace chebmod
