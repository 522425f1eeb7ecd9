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

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "chebmod/fitting.hpp"
#include "chebmod/modp.hpp"
#include "chebmod/simulator.hpp"

namespace chebmod {

// Packed integers must stay exactly representable in a double slot.
inline constexpr long kMaxPackedRange = 1L << 24;

// ---- VecConcat ----

struct ConcatLayout {
  std::vector<std::size_t> sizes;

  std::size_t total() const;
  void validate(std::size_t slots) const;
};

std::vector<cplx> vec_pack(std::span<const std::vector<cplx>> vectors, const ConcatLayout& layout, std::size_t slots);
std::vector<cplx> vec_pack(std::span<const std::vector<double>> vectors, const ConcatLayout& layout,
                           std::size_t slots);

/// One rotate_batch call and one masking multiplication per vector.
std::vector<SlotCiphertext> vec_unpack(const Simulator& sim, const SlotCiphertext& ct, const ConcatLayout& layout);

/// Tiles the leading dx slots r times by doubling; no level consumed.
SlotCiphertext repack_repeat(const Simulator& sim, const SlotCiphertext& ct, std::size_t dx, std::size_t r);

// ---- ImgConcat ----

std::vector<cplx> img_pack(std::span<const double> a, std::span<const double> b, std::size_t slots);

/// (real part masked to n1 slots, imaginary part masked to n2 slots).
std::pair<SlotCiphertext, SlotCiphertext> img_unpack(const Simulator& sim, const SlotCiphertext& ct, std::size_t n1,
                                                     std::size_t n2);

// ---- BitStack ----

/// Radix stacking x = a_0 + a_1 r_0 + a_2 r_0 r_1 + ...  Binary layouts use
/// r_i = 2^{l_i}.  plans[i] strips layer i (all but the last layer).
struct BitStackLayout {
  std::vector<long> radices;
  std::vector<ModPlan> plans;

  static BitStackLayout binary(const std::vector<int>& bit_widths, int degree);
  static BitStackLayout with_radices(const std::vector<long>& radices, int degree);

  std::size_t layers() const { return radices.size(); }
  long range_from(std::size_t layer) const;  // product of radices[layer..]
  void validate() const;
};

std::vector<long> bitstack_pack(std::span<const std::vector<long>> values, const BitStackLayout& layout);

std::vector<SlotCiphertext> bitstack_unpack(const Simulator& sim, const SlotCiphertext& ct,
                                            const BitStackLayout& layout);

// ---- CRTStack ----

struct CrtBasis {
  std::vector<long> moduli;
  long product = 1;
  std::vector<long> recombinants;  // b_i = P'_i m_i mod P
  std::vector<ModPlan> plans;      // one per layer, interval [0, P - 1]

  /// Recombination constants only; plans left empty.
  static CrtBasis make(const std::vector<long>& moduli);
  static CrtBasis make(const std::vector<long>& moduli, int degree);

  void validate() const;
};

/// Inverse of a modulo m; throws DomainError when gcd(a, m) != 1.
long mod_inverse(long a, long m);

std::vector<long> crt_pack(std::span<const std::vector<long>> values, const CrtBasis& basis);

/// Layers are independent ModP evaluations of the same input; with
/// `parallel` they run as concurrent jobs.
std::vector<SlotCiphertext> crt_unpack(const Simulator& sim, const SlotCiphertext& ct, const CrtBasis& basis,
                                       bool parallel = true);

// ---- helpers ----

std::vector<cplx> to_complex(std::span<const long> v);
std::vector<cplx> to_complex(std::span<const double> v);

}  // namespace chebmod
