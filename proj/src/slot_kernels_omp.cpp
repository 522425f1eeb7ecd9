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
#include <omp.h>

#include "chebmod/errors.hpp"
#include "chebmod/slot_kernels.hpp"

namespace chebmod::kernels::omp {

namespace {

// Below this many slots the fork/join overhead dominates.
constexpr std::ptrdiff_t kParallelThreshold = 4096;

void check(std::size_t a, std::size_t b) {
  if (a != b) throw ShapeError("slot vectors differ in length");
}

template <class F>
void for_each_slot(std::size_t n, F&& f) {
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (count >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < count; ++i) f(static_cast<std::size_t>(i));
}

}  // namespace

void add(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  check(a.size(), b.size());
  check(a.size(), out.size());
  for_each_slot(a.size(), [&](std::size_t i) { out[i] = a[i] + b[i]; });
}

void sub(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  check(a.size(), b.size());
  check(a.size(), out.size());
  for_each_slot(a.size(), [&](std::size_t i) { out[i] = a[i] - b[i]; });
}

void mul(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  check(a.size(), b.size());
  check(a.size(), out.size());
  for_each_slot(a.size(), [&](std::size_t i) { out[i] = a[i] * b[i]; });
}

void scale(std::span<const cplx> a, cplx c, std::span<cplx> out) {
  check(a.size(), out.size());
  for_each_slot(a.size(), [&](std::size_t i) { out[i] = a[i] * c; });
}

void shift(std::span<const cplx> a, cplx c, std::span<cplx> out) {
  check(a.size(), out.size());
  for_each_slot(a.size(), [&](std::size_t i) { out[i] = a[i] + c; });
}

void conjugate(std::span<const cplx> a, std::span<cplx> out) {
  check(a.size(), out.size());
  for_each_slot(a.size(), [&](std::size_t i) { out[i] = std::conj(a[i]); });
}

void rotate(std::span<const cplx> a, std::ptrdiff_t steps, std::span<cplx> out) {
  check(a.size(), out.size());
  const std::size_t n = a.size();
  const std::size_t s = normalize_rotation(steps, n);
  for_each_slot(n, [&](std::size_t i) {
    const std::size_t src = i + s;
    out[i] = a[src >= n ? src - n : src];
  });
}

}  // namespace chebmod::kernels::omp
