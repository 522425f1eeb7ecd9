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
#include "chebmod/paterson_stockmeyer.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace chebmod::ps {

namespace {

int ceil_log2(int v) {
  int bits = 0;
  while ((1 << bits) < v) ++bits;
  return bits;
}

// A series of degree <= k is a single leaf and needs no giant step.
int minimal_m(int k, int degree) {
  if (degree <= k) return 1;
  int m = 1;
  while (k * ((1 << m) - 1) <= degree) ++m;
  return m;
}

int trimmed_degree(std::span<const double> p) {
  int d = static_cast<int>(p.size()) - 1;
  while (d > 0 && p[static_cast<std::size_t>(d)] == 0.0) --d;
  return d;
}

}  // namespace

PsSchedule plan_schedule(int degree) {
  if (degree < 1) throw InvariantError("schedule needs degree >= 1");
  const int k = std::max(1, static_cast<int>(std::lround(std::sqrt(degree / 2.0))));
  return PsSchedule{k, minimal_m(k, degree), 1.0};
}

PsSchedule plan_schedule_min_depth(int degree) {
  if (degree < 1) throw InvariantError("schedule needs degree >= 1");
  const double target = std::sqrt(degree / 2.0);
  PsSchedule best{};
  int best_depth = std::numeric_limits<int>::max();
  double best_gap = std::numeric_limits<double>::max();
  for (int k = 1; k <= degree + 1; ++k) {
    const PsSchedule cand{k, minimal_m(k, degree), 1.0};
    const int depth = predicted_depth(cand, degree);
    const double gap = std::abs(k - target);
    if (depth < best_depth || (depth == best_depth && gap < best_gap)) {
      best = cand;
      best_depth = depth;
      best_gap = gap;
    }
  }
  return best;
}

int predicted_depth(const PsSchedule& sched, int degree) {
  if (degree <= 0) return 0;
  const int scale = sched.folded_scale != 1.0 ? 1 : 0;
  if (degree <= sched.k) return ceil_log2(degree) + 1 + scale;
  int level = 2;
  while (sched.k * ((1 << level) - 1) < degree) ++level;
  return ceil_log2(sched.k) + level + scale;
}

ChebDivision divide(std::span<const double> num, std::span<const double> den) {
  const int dd = trimmed_degree(den);
  if (den.empty() || den[static_cast<std::size_t>(dd)] == 0.0) throw InvariantError("division by zero polynomial");
  const int nd = num.empty() ? 0 : trimmed_degree(num);
  std::vector<double> rem(num.begin(), num.end());
  if (rem.empty()) rem.push_back(0.0);

  ChebDivision out;
  if (nd < dd || (nd == 0 && rem[0] == 0.0 && dd > 0)) {
    out.quotient = {0.0};
    rem.resize(static_cast<std::size_t>(std::max(dd, 1)), 0.0);
    out.remainder = std::move(rem);
    return out;
  }

  const double lead = den[static_cast<std::size_t>(dd)];
  out.quotient.assign(static_cast<std::size_t>(nd - dd) + 1, 0.0);
  for (int j = nd; j >= dd; --j) {
    const double cj = rem[static_cast<std::size_t>(j)];
    if (cj == 0.0) continue;
    const int shift = j - dd;
    // T_shift * T_dd contributes T_j with weight 1/2 unless one index is 0
    const double factor = (shift == 0 || dd == 0 ? 1.0 : 2.0) * cj / lead;
    out.quotient[static_cast<std::size_t>(shift)] += factor;
    for (int i = 0; i <= dd; ++i) {
      const double v = factor * den[static_cast<std::size_t>(i)];
      if (v == 0.0) continue;
      if (shift == 0) {
        rem[static_cast<std::size_t>(i)] -= v;
      } else {
        rem[static_cast<std::size_t>(shift + i)] -= 0.5 * v;
        rem[static_cast<std::size_t>(std::abs(shift - i))] -= 0.5 * v;
      }
    }
    rem[static_cast<std::size_t>(j)] = 0.0;
  }
  rem.resize(static_cast<std::size_t>(std::max(dd, 1)));
  out.remainder = std::move(rem);
  return out;
}

namespace detail {

SplitParts split_at(std::span<const double> f, int k, int level) {
  const int g = k << (level - 1);
  const int low_cap = g - k;
  const int deg = static_cast<int>(f.size()) - 1;
  if (deg > g + low_cap) throw InvariantError("split input exceeds level capacity");

  SplitParts parts;
  parts.high.assign(static_cast<std::size_t>(std::max(deg - g, 0)) + 1, 0.0);
  std::vector<double> rest(static_cast<std::size_t>(g), 0.0);
  for (int j = 0; j <= deg; ++j) {
    const double c = f[static_cast<std::size_t>(j)];
    if (j < g) {
      rest[static_cast<std::size_t>(j)] += c;
    } else if (j == g) {
      parts.high[0] += c;
    } else {
      // T_j = 2 T_{j-g} T_g - T_{2g-j}
      parts.high[static_cast<std::size_t>(j - g)] += 2.0 * c;
      rest[static_cast<std::size_t>(2 * g - j)] -= c;
    }
  }
  // T_{g-k+t} = 2 T_{g-k} T_t - T_{g-k-t} for 0 < t < k
  parts.mid.assign(static_cast<std::size_t>(k), 0.0);
  for (int t = k - 1; t >= 1; --t) {
    const double c = rest[static_cast<std::size_t>(low_cap + t)];
    if (c == 0.0) continue;
    parts.mid[static_cast<std::size_t>(t)] = 2.0 * c;
    rest[static_cast<std::size_t>(low_cap - t)] -= c;
  }
  rest.resize(static_cast<std::size_t>(low_cap) + 1);
  parts.low = std::move(rest);
  return parts;
}

}  // namespace detail

std::vector<double> multiply(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {0.0};
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double v = 0.5 * a[i] * b[j];
      out[i + j] += v;
      out[i > j ? i - j : j - i] += v;
    }
  }
  return out;
}

}  // namespace chebmod::ps
