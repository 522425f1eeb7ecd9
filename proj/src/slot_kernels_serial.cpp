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
#include "chebmod/slot_kernels.hpp"

#include <algorithm>

#include "chebmod/errors.hpp"

namespace chebmod::kernels {

std::size_t normalize_rotation(std::ptrdiff_t steps, std::size_t n) {
  if (n == 0) return 0;
  const auto m = static_cast<std::ptrdiff_t>(n);
  return static_cast<std::size_t>(((steps % m) + m) % m);
}

namespace serial {

namespace {
void check(std::size_t a, std::size_t b) {
  if (a != b) throw ShapeError("slot vectors differ in length");
}
}  // namespace

void add(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  check(a.size(), b.size());
  check(a.size(), out.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
}

void sub(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  check(a.size(), b.size());
  check(a.size(), out.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
}

void mul(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  check(a.size(), b.size());
  check(a.size(), out.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
}

void scale(std::span<const cplx> a, cplx c, std::span<cplx> out) {
  check(a.size(), out.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * c;
}

void shift(std::span<const cplx> a, cplx c, std::span<cplx> out) {
  check(a.size(), out.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + c;
}

void conjugate(std::span<const cplx> a, std::span<cplx> out) {
  check(a.size(), out.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::conj(a[i]);
}

void rotate(std::span<const cplx> a, std::ptrdiff_t steps, std::span<cplx> out) {
  check(a.size(), out.size());
  const std::size_t s = normalize_rotation(steps, a.size());
  std::rotate_copy(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(s), a.end(), out.begin());
}

}  // namespace serial
}  // namespace chebmod::kernels
