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

#include <concepts>
#include <optional>
#include <span>
#include <vector>

#include "chebmod/chebyshev.hpp"
#include "chebmod/errors.hpp"

namespace chebmod::ps {

/// Arithmetic surface shared by the plaintext and ciphertext evaluation paths.
template <class B>
concept ArithmeticBackend = requires(const B& b, const typename B::Element& e, double c) {
  { b.add(e, e) } -> std::same_as<typename B::Element>;
  { b.sub(e, e) } -> std::same_as<typename B::Element>;
  { b.mul(e, e) } -> std::same_as<typename B::Element>;
  { b.mul_const(e, c) } -> std::same_as<typename B::Element>;
  { b.add_const(e, c) } -> std::same_as<typename B::Element>;
  { b.constant_like(e, c) } -> std::same_as<typename B::Element>;
  { b.level(e) } -> std::convertible_to<int>;
};

/// Scalar doubles; levels are not tracked.
struct PlainBackend {
  using Element = double;
  double add(double a, double b) const { return a + b; }
  double sub(double a, double b) const { return a - b; }
  double mul(double a, double b) const { return a * b; }
  double mul_const(double a, double c) const { return a * c; }
  double add_const(double a, double c) const { return a + c; }
  double constant_like(double, double c) const { return c; }
  int level(double) const { return 0; }
};

struct PsSchedule {
  int k = 1;
  int m = 1;
  double folded_scale = 1.0;  // applied once to the final result

  int capacity() const { return k * ((1 << m) - 1); }
};

/// k = round(sqrt(D/2)) (at least 1) and the smallest m with k(2^m - 1) > D;
/// m = 1 when D <= k.
PsSchedule plan_schedule(int degree);

/// Among all (k, m) with k(2^m - 1) > D, the pair of least evaluation depth;
/// ties go to the k closest to sqrt(D/2).
PsSchedule plan_schedule_min_depth(int degree);

/// Levels eval_ps consumes for a dense series of this degree.
int predicted_depth(const PsSchedule& sched, int degree);

struct ChebDivision {
  std::vector<double> quotient;
  std::vector<double> remainder;
};

/// Long division num = q * den + r in the Chebyshev basis, deg r < deg den.
/// Uses 2 T_a T_b = T_{a+b} + T_{|a-b|}.
ChebDivision divide(std::span<const double> num, std::span<const double> den);

/// Product of two Chebyshev-basis polynomials.
std::vector<double> multiply(std::span<const double> a, std::span<const double> b);

template <class E>
struct PowerBasis {
  std::vector<E> baby;   // T_1 .. T_k
  std::vector<E> giant;  // T_k, T_2k, .., T_{2^{m-1} k}
  std::vector<E> top;    // T_k, T_3k, .., T_{(2^{m-1} - 1) k}
  int levels_consumed = 0;
};

template <ArithmeticBackend Backend>
PowerBasis<typename Backend::Element> compute_power_basis(const Backend& be, const typename Backend::Element& u,
                                                          const PsSchedule& sched) {
  using E = typename Backend::Element;
  if (sched.k < 1 || sched.m < 1) throw InvariantError("schedule needs k >= 1 and m >= 1");
  PowerBasis<E> basis;
  basis.baby.reserve(static_cast<std::size_t>(sched.k));
  basis.baby.push_back(u);
  for (int i = 2; i <= sched.k; ++i) {
    const E& lo = basis.baby[static_cast<std::size_t>(i / 2 - 1)];
    if (i % 2 == 0) {
      // T_{2h} = 2 T_h^2 - 1
      E sq = be.mul(lo, lo);
      basis.baby.push_back(be.add_const(be.add(sq, sq), -1.0));
    } else {
      // T_{2h+1} = 2 T_h T_{h+1} - T_1
      E prod = be.mul(lo, basis.baby[static_cast<std::size_t>(i / 2)]);
      basis.baby.push_back(be.sub(be.add(prod, prod), u));
    }
  }
  basis.giant.reserve(static_cast<std::size_t>(sched.m));
  basis.giant.push_back(basis.baby.back());
  for (int j = 1; j < sched.m; ++j) {
    const E& prev = basis.giant.back();
    E sq = be.mul(prev, prev);
    basis.giant.push_back(be.add_const(be.add(sq, sq), -1.0));
  }
  // T_{k(2^j - 1)} = 2 T_{k(2^{j-1} - 1)} T_{k 2^{j-1}} - T_k
  basis.top.reserve(static_cast<std::size_t>(sched.m));
  basis.top.push_back(basis.giant.front());
  for (int j = 2; j < sched.m; ++j) {
    E prod = be.mul(basis.top.back(), basis.giant[static_cast<std::size_t>(j - 1)]);
    basis.top.push_back(be.sub(be.add(prod, prod), basis.giant.front()));
  }
  int lowest = be.level(u);
  for (const E& e : basis.baby) lowest = std::min(lowest, be.level(e));
  for (const E& e : basis.giant) lowest = std::min(lowest, be.level(e));
  for (const E& e : basis.top) lowest = std::min(lowest, be.level(e));
  basis.levels_consumed = be.level(u) - lowest;
  return basis;
}

namespace detail {

template <ArithmeticBackend Backend>
typename Backend::Element eval_leaf(const Backend& be, std::span<const double> coeffs,
                                    const PowerBasis<typename Backend::Element>& basis) {
  using E = typename Backend::Element;
  if (coeffs.size() > basis.baby.size() + 1) throw InvariantError("leaf polynomial exceeds baby-step degree");
  std::optional<E> acc;
  for (std::size_t i = 1; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0.0) continue;
    E term = be.mul_const(basis.baby[i - 1], coeffs[i]);
    acc = acc ? be.add(*acc, term) : std::move(term);
  }
  const double c0 = coeffs.empty() ? 0.0 : coeffs[0];
  if (!acc) return be.constant_like(basis.baby.front(), c0);
  return c0 == 0.0 ? std::move(*acc) : be.add_const(*acc, c0);
}

struct SplitParts {
  std::vector<double> high;  // multiplies T_g
  std::vector<double> mid;   // multiplies T_{g-k}, degree < k
  std::vector<double> low;
};

// f = T_g high + T_{g-k} mid + low with g = k 2^{level-1}; only the
// identities 2 T_a T_b = T_{a+b} + T_{|a-b|} are used, so no coefficient
// is ever divided.
SplitParts split_at(std::span<const double> f, int k, int level);

template <ArithmeticBackend Backend>
typename Backend::Element eval_split(const Backend& be, std::span<const double> f, int k, int level,
                                     const PowerBasis<typename Backend::Element>& basis) {
  std::size_t deg = f.size() - 1;
  while (deg > 0 && f[deg] == 0.0) --deg;
  f = f.first(deg + 1);
  while (level > 1 && static_cast<int>(deg) <= k * ((1 << (level - 1)) - 1)) --level;
  if (level == 1) return eval_leaf(be, f, basis);

  SplitParts parts = split_at(f, k, level);
  auto out = be.mul(basis.giant[static_cast<std::size_t>(level - 1)], eval_split(be, parts.high, k, level - 1, basis));
  bool has_mid = false;
  for (double c : parts.mid) has_mid |= (c != 0.0);
  if (has_mid) out = be.add(out, be.mul(basis.top[static_cast<std::size_t>(level - 2)], eval_leaf(be, parts.mid, basis)));
  return be.add(out, eval_split(be, parts.low, k, level - 1, basis));
}

// f has degree exactly k(2^level - 1) with a nonzero leading coefficient.
template <ArithmeticBackend Backend>
typename Backend::Element eval_recursive(const Backend& be, const std::vector<double>& f, int k, int level,
                                         const PowerBasis<typename Backend::Element>& basis) {
  using E = typename Backend::Element;
  if (level == 1) return eval_leaf(be, f, basis);

  const int half = k << (level - 1);
  const int low = k * ((1 << (level - 1)) - 1);

  std::vector<double> divisor(static_cast<std::size_t>(half) + 1, 0.0);
  divisor.back() = 1.0;
  ChebDivision qr = divide(f, divisor);

  // r~ = r - T_low, then r~ = c q + s with deg c < k
  std::vector<double> rt = std::move(qr.remainder);
  if (rt.size() < static_cast<std::size_t>(low) + 1) rt.resize(static_cast<std::size_t>(low) + 1, 0.0);
  rt[static_cast<std::size_t>(low)] -= 1.0;
  ChebDivision cs = divide(rt, qr.quotient);

  // s~ = s + T_low keeps the recursion monic-degree
  std::vector<double> st = std::move(cs.remainder);
  st.resize(static_cast<std::size_t>(low) + 1, 0.0);
  st.back() += 1.0;

  E qv = eval_recursive(be, qr.quotient, k, level - 1, basis);
  E sv = eval_recursive(be, st, k, level - 1, basis);

  const E& giant = basis.giant[static_cast<std::size_t>(level - 1)];
  bool has_linear_part = false;
  for (std::size_t i = 1; i < cs.quotient.size(); ++i) has_linear_part |= (cs.quotient[i] != 0.0);
  E cv = has_linear_part ? be.add(giant, eval_leaf(be, cs.quotient, basis))
                         : be.add_const(giant, cs.quotient.empty() ? 0.0 : cs.quotient[0]);
  return be.add(be.mul(cv, qv), sv);
}

}  // namespace detail

enum class PsVariant {
  kSplit,     // giant-step split with an explicit T_{g-k} correction term
  kDivision,  // classic recursion dividing the remainder by the quotient
};

/// Evaluates folded_scale * sum c_i T_i(u) with a Chebyshev-basis
/// Paterson-Stockmeyer scheme.  u must already be mapped into [-1, 1].
/// kDivision loses accuracy on series whose coefficients do not decay.
template <ArithmeticBackend Backend>
typename Backend::Element eval_ps(const Backend& be, std::span<const double> coeffs,
                                  const typename Backend::Element& u, const PsSchedule& sched,
                                  PsVariant variant = PsVariant::kSplit) {
  using E = typename Backend::Element;
  if (coeffs.empty()) throw InvariantError("empty coefficient list");
  int degree = static_cast<int>(coeffs.size()) - 1;
  while (degree > 0 && coeffs[static_cast<std::size_t>(degree)] == 0.0) --degree;
  const int cap = sched.capacity();
  if (degree > cap) {
    throw InvariantError("degree " + std::to_string(degree) + " exceeds schedule capacity " + std::to_string(cap));
  }
  if (degree == 0) return be.constant_like(u, coeffs[0] * sched.folded_scale);

  const PowerBasis<E> basis = compute_power_basis(be, u, sched);
  const auto used = coeffs.first(static_cast<std::size_t>(degree) + 1);
  E result = [&] {
    if (degree <= sched.k) return detail::eval_leaf(be, used, basis);
    if (variant == PsVariant::kSplit) return detail::eval_split(be, used, sched.k, sched.m, basis);

    // Pad to degree k(2^m - 1) and add a multiple of T_cap so the top
    // coefficient is nonzero; subtract it again at the end.
    std::vector<double> padded(static_cast<std::size_t>(cap) + 1, 0.0);
    std::copy(used.begin(), used.end(), padded.begin());
    const int shift_pow = (padded.back() == -1.0) ? 1 : 0;
    padded.back() += static_cast<double>(1 << shift_pow);
    E value = detail::eval_recursive(be, padded, sched.k, sched.m, basis);

    const E& last_top = basis.top.back();
    E prod = be.mul(last_top, basis.giant.back());
    E top = be.sub(be.add(prod, prod), basis.giant.front());
    for (int i = 0; i < shift_pow; ++i) top = be.add(top, top);
    return be.sub(value, top);
  }();
  if (sched.folded_scale != 1.0) result = be.mul_const(result, sched.folded_scale);
  return result;
}

template <ArithmeticBackend Backend>
typename Backend::Element eval_ps(const Backend& be, const ChebSeries& series, const typename Backend::Element& u,
                                  const PsSchedule& sched, PsVariant variant = PsVariant::kSplit) {
  return eval_ps(be, std::span<const double>(series.coeffs), u, sched, variant);
}

// Guard on addition-chain length for power-of-two scaling.
inline constexpr int kMaxAdditiveShift = 24;

/// e * 2^l by l self-additions; consumes no level.
template <ArithmeticBackend Backend>
typename Backend::Element mul_by_pow2_additively(const Backend& be, typename Backend::Element e, int l) {
  if (l < 0 || l > kMaxAdditiveShift) {
    throw GuardError("additive shift " + std::to_string(l) + " outside [0, " + std::to_string(kMaxAdditiveShift) +
                     "]");
  }
  for (int i = 0; i < l; ++i) e = be.add(e, e);
  return e;
}

/// e * n for a positive integer n by double-and-add; consumes no level.
template <ArithmeticBackend Backend>
typename Backend::Element mul_by_int_additively(const Backend& be, const typename Backend::Element& e, long n) {
  if (n < 1 || n > (1L << kMaxAdditiveShift)) throw GuardError("additive multiplier out of range");
  std::optional<typename Backend::Element> acc;
  typename Backend::Element power = e;
  while (true) {
    if (n & 1) acc = acc ? be.add(*acc, power) : power;
    n >>= 1;
    if (n == 0) break;
    power = be.add(power, power);
  }
  return *acc;
}

}  // namespace chebmod::ps
