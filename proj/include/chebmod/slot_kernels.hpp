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

#include <complex>
#include <cstddef>
#include <span>

namespace chebmod::kernels {

using cplx = std::complex<double>;

// Element-wise slot kernels.  `out` may alias an input except for rotate.
// The serial versions are the reference the OpenMP versions are tested
// against.
namespace serial {
void add(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);
void sub(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);
void mul(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);
void scale(std::span<const cplx> a, cplx c, std::span<cplx> out);
void shift(std::span<const cplx> a, cplx c, std::span<cplx> out);
void conjugate(std::span<const cplx> a, std::span<cplx> out);
void rotate(std::span<const cplx> a, std::ptrdiff_t steps, std::span<cplx> out);
}  // namespace serial

namespace omp {
void add(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);
void sub(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);
void mul(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);
void scale(std::span<const cplx> a, cplx c, std::span<cplx> out);
void shift(std::span<const cplx> a, cplx c, std::span<cplx> out);
void conjugate(std::span<const cplx> a, std::span<cplx> out);
void rotate(std::span<const cplx> a, std::ptrdiff_t steps, std::span<cplx> out);
}  // namespace omp

// Left-rotation offset normalized into [0, n).
std::size_t normalize_rotation(std::ptrdiff_t steps, std::size_t n);

}  // namespace chebmod::kernels
