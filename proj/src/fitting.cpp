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
#include "chebmod/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace chebmod {

void StepSpec::validate() const {
  if (samples.empty()) throw InvariantError("step spec has no samples");
  if (upper <= 0) throw InvariantError("step spec upper bound must be positive");
  if (degree < static_cast<int>(samples.size()) - 1) {
    throw InvariantError("degree " + std::to_string(degree) + " too small for " +
                         std::to_string(samples.size()) + " samples");
  }
  std::set<long> seen;
  for (const auto& [x, y] : samples) {
    if (x < 0 || x > upper) throw InvariantError("sample abscissa outside [0, upper]");
    if (!seen.insert(x).second) throw InvariantError("duplicate sample abscissa " + std::to_string(x));
  }
}

LinearSystem build_system(const StepSpec& spec) {
  spec.validate();
  const auto rows = static_cast<Eigen::Index>(spec.samples.size());
  const Eigen::Index cols = spec.degree + 1;
  LinearSystem sys{Eigen::MatrixXd(rows, cols), Eigen::VectorXd(rows)};
  for (Eigen::Index j = 0; j < rows; ++j) {
    const auto& [x, y] = spec.samples[static_cast<std::size_t>(j)];
    const double u = map_to_unit(static_cast<double>(x), static_cast<double>(spec.upper));
    sys.a(j, 0) = 1.0;
    if (cols > 1) sys.a(j, 1) = u;
    for (Eigen::Index i = 2; i < cols; ++i) sys.a(j, i) = 2.0 * u * sys.a(j, i - 1) - sys.a(j, i - 2);
    sys.y(j) = y;
  }
  return sys;
}

Eigen::VectorXd solve_min_norm(const Eigen::MatrixXd& a, const Eigen::VectorXd& y) {
  if (a.rows() != y.size()) throw InvariantError("system row count does not match right-hand side");
  if (a.rows() > a.cols()) throw RankDeficientError("system has more equations than unknowns");
  const Eigen::MatrixXd gram = a * a.transpose();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > kMaxGramCondition) {
    throw RankDeficientError("Gram matrix is singular (condition estimate " + std::to_string(hi / lo) +
                             "); raise the degree or remove duplicate samples");
  }

  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) throw RankDeficientError("Cholesky factorisation of Gram matrix failed");
  Eigen::VectorXd alpha = a.transpose() * llt.solve(y);
  const Eigen::VectorXd r = y - a * alpha;
  alpha += a.transpose() * llt.solve(r);
  return alpha;
}

double suggest_delta(std::span<const double> alpha, double headroom) {
  if (alpha.empty()) throw InvariantError("suggest_delta needs coefficients");
  if (!(headroom > 0.0 && headroom < 1.0)) throw InvariantError("headroom must lie in (0, 1)");
  double peak = 0.0;
  for (double v : alpha) peak = std::max(peak, std::abs(v));
  double delta = 1.0;
  while (peak / delta > headroom) delta *= 10.0;
  return delta;
}

double default_delta(long upper, int degree) {
  return (upper == 29 && degree == 35) ? 1000.0 : 100.0;
}

double ModPlan::max_abs_coefficient() const {
  double peak = 0.0;
  for (double v : series.coeffs) peak = std::max(peak, std::abs(v));
  return peak;
}

namespace {

ModPlan finish_plan(const StepSpec& spec, const Eigen::VectorXd& alpha, double delta) {
  if (!(delta > 0.0)) throw InvariantError("scaling factor must be positive");
  std::vector<double> beta(static_cast<std::size_t>(alpha.size()));
  for (Eigen::Index i = 0; i < alpha.size(); ++i) beta[static_cast<std::size_t>(i)] = alpha(i) / delta;

  ModPlan plan;
  plan.upper = spec.upper;
  plan.degree = spec.degree;
  plan.delta = delta;
  plan.series = ChebSeries(std::move(beta), static_cast<double>(spec.upper));
  if (plan.max_abs_coefficient() >= 1.0) {
    throw InvariantError("scaled coefficient magnitude " + std::to_string(plan.max_abs_coefficient()) +
                         " >= 1; scaling factor " + std::to_string(delta) + " is too small");
  }

  double worst = 0.0;
  double sum = 0.0;
  for (const auto& [x, y] : spec.samples) {
    const double err = std::abs(plan.evaluate(static_cast<double>(x)) - y);
    worst = std::max(worst, err);
    sum += err;
  }
  plan.residual = worst;
  plan.mean_error = sum / static_cast<double>(spec.samples.size());
  return plan;
}

StepSpec modp_spec(long p, long upper, int degree) {
  if (p < 2) throw InvariantError("modulus must be at least 2");
  if (degree <= upper) {
    throw InvariantError("degree " + std::to_string(degree) + " must exceed interval upper bound " +
                         std::to_string(upper));
  }
  StepSpec spec;
  spec.upper = upper;
  spec.degree = degree;
  spec.samples.reserve(static_cast<std::size_t>(upper) + 1);
  for (long i = 0; i <= upper; ++i) spec.samples.emplace_back(i, static_cast<double>(i % p));
  return spec;
}

Eigen::VectorXd solve_spec(const StepSpec& spec) {
  const LinearSystem sys = build_system(spec);
  return solve_min_norm(sys.a, sys.y);
}

}  // namespace

ModPlan fit_step(const StepSpec& spec, double delta) {
  return finish_plan(spec, solve_spec(spec), delta);
}

ModPlan fit_step_auto(const StepSpec& spec, double headroom) {
  const Eigen::VectorXd alpha = solve_spec(spec);
  const double delta =
      suggest_delta(std::span<const double>(alpha.data(), static_cast<std::size_t>(alpha.size())), headroom);
  return finish_plan(spec, alpha, delta);
}

ModPlan fit_modp_auto(long p, long upper, int degree, double headroom) {
  ModPlan plan = fit_step_auto(modp_spec(p, upper, degree), headroom);
  plan.modulus = p;
  return plan;
}

ModPlan fit_modp(long p, long upper, int degree, double delta) {
  ModPlan plan = fit_step(modp_spec(p, upper, degree), delta);
  plan.modulus = p;
  return plan;
}

ModPlan fit_modp(long p, long upper, int degree) {
  const StepSpec spec = modp_spec(p, upper, degree);
  const Eigen::VectorXd alpha = solve_spec(spec);
  double delta = default_delta(upper, degree);
  if (alpha.cwiseAbs().maxCoeff() / delta >= 1.0) {
    delta = suggest_delta(std::span<const double>(alpha.data(), static_cast<std::size_t>(alpha.size())), 0.5);
  }
  ModPlan plan = finish_plan(spec, alpha, delta);
  plan.modulus = p;
  return plan;
}

std::pair<double, double> modp_errors(const ModPlan& plan) {
  if (plan.modulus < 1) throw InvariantError("modp_errors needs a modulus plan");
  double worst = 0.0;
  double sum = 0.0;
  for (long i = 0; i <= plan.upper; ++i) {
    const double err = std::abs(plan.evaluate(static_cast<double>(i)) - static_cast<double>(i % plan.modulus));
    worst = std::max(worst, err);
    sum += err;
  }
  return {worst, sum / static_cast<double>(plan.upper + 1)};
}

}  // namespace chebmod
