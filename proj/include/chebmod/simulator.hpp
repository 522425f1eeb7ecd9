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

#include <atomic>
#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "chebmod/paterson_stockmeyer.hpp"

namespace chebmod {

using cplx = std::complex<double>;

struct SimParams {
  std::size_t slots = std::size_t{1} << 15;
  int max_level = 25;
  double noise_stddev = 0.0;  // Gaussian noise per slot after each multiplication
  std::uint64_t seed = 0;
  // Kept for documentation of the modeled parameter set; no effect here.
  int scale_bits = 46;
  int first_mod_bits = 51;

  void validate() const;
};

/// Immutable simulated ciphertext: slot values plus remaining level.
class SlotCiphertext {
 public:
  SlotCiphertext() = default;
  SlotCiphertext(std::vector<cplx> slots, int level, std::uint64_t tag);

  std::size_t size() const { return slots_ ? slots_->size() : 0; }
  int level() const { return level_; }
  std::uint64_t tag() const { return tag_; }
  std::span<const cplx> slots() const;

 private:
  std::shared_ptr<const std::vector<cplx>> slots_;
  int level_ = 0;
  std::uint64_t tag_ = 0;
};

struct OpCounts {
  std::uint64_t add = 0;
  std::uint64_t mul = 0;        // ciphertext x ciphertext
  std::uint64_t mul_plain = 0;  // by a plaintext vector
  std::uint64_t mul_const = 0;  // by a scalar
  std::uint64_t rotate = 0;
  std::uint64_t conjugate = 0;

  std::uint64_t multiplications() const { return mul + mul_plain + mul_const; }
};

/// CKKS slot-semantics machine.  All operations are const and thread-safe;
/// only the operation counters are shared state.
class Simulator {
 public:
  explicit Simulator(SimParams params = {});

  const SimParams& params() const { return params_; }
  std::size_t slots() const { return params_.slots; }

  SlotCiphertext encrypt(std::span<const cplx> values) const;
  SlotCiphertext encrypt_real(std::span<const double> values) const;
  std::vector<cplx> decrypt(const SlotCiphertext& ct) const;
  std::vector<double> decrypt_real(const SlotCiphertext& ct) const;

  SlotCiphertext add(const SlotCiphertext& a, const SlotCiphertext& b) const;
  SlotCiphertext sub(const SlotCiphertext& a, const SlotCiphertext& b) const;
  SlotCiphertext add_const(const SlotCiphertext& a, cplx c) const;
  SlotCiphertext mul(const SlotCiphertext& a, const SlotCiphertext& b) const;
  SlotCiphertext mul_plain(const SlotCiphertext& a, std::span<const cplx> plain) const;
  SlotCiphertext mul_const(const SlotCiphertext& a, cplx c) const;
  SlotCiphertext rotate(const SlotCiphertext& a, std::ptrdiff_t steps) const;
  std::vector<SlotCiphertext> rotate_batch(const SlotCiphertext& a, std::span<const std::ptrdiff_t> steps) const;
  SlotCiphertext conjugate(const SlotCiphertext& a) const;
  SlotCiphertext constant_like(const SlotCiphertext& a, cplx c) const;

  OpCounts counts() const;
  void reset_counts() const;

 private:
  void check_same(const SlotCiphertext& a, const SlotCiphertext& b) const;
  int level_after_mul(int level) const;
  SlotCiphertext finish_mul(std::vector<cplx> slots, int level, std::uint64_t tag) const;

  SimParams params_;
  mutable std::atomic<std::uint64_t> add_{0}, mul_{0}, mul_plain_{0}, mul_const_{0}, rotate_{0}, conjugate_{0};
};

/// Plaintext mask: `value` in slots [begin, begin + count), zero elsewhere.
std::vector<cplx> slot_mask(std::size_t slots, std::size_t begin, std::size_t count, cplx value = 1.0);

/// Adapter exposing the simulator to the Paterson-Stockmeyer evaluator.
struct SimBackend {
  using Element = SlotCiphertext;
  const Simulator& sim;

  Element add(const Element& a, const Element& b) const { return sim.add(a, b); }
  Element sub(const Element& a, const Element& b) const { return sim.sub(a, b); }
  Element mul(const Element& a, const Element& b) const { return sim.mul(a, b); }
  Element mul_const(const Element& a, double c) const { return sim.mul_const(a, c); }
  Element add_const(const Element& a, double c) const { return sim.add_const(a, c); }
  Element constant_like(const Element& a, double c) const { return sim.constant_like(a, c); }
  int level(const Element& a) const { return a.level(); }
};

static_assert(ps::ArithmeticBackend<SimBackend>);
static_assert(ps::ArithmeticBackend<ps::PlainBackend>);

}  // namespace chebmod
