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
#include "chebmod/simulator.hpp"

#include <bit>
#include <cstring>
#include <random>
#include <string>

#include "chebmod/slot_kernels.hpp"

namespace chebmod {

namespace {

enum class Op : std::uint64_t { kEncrypt = 1, kAdd, kSub, kAddConst, kMul, kMulPlain, kMulConst, kRotate, kConj, kConst };

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t combine(std::uint64_t h, std::uint64_t v) { return mix(h ^ (v + 0x632be59bd9b4e019ULL + (h << 6))); }

std::uint64_t bits_of(double d) { return std::bit_cast<std::uint64_t>(d); }

std::uint64_t hash_values(std::span<const cplx> values) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const cplx& v : values) h = combine(combine(h, bits_of(v.real())), bits_of(v.imag()));
  return h;
}

std::uint64_t tag2(Op op, std::uint64_t a, std::uint64_t b) {
  return combine(combine(static_cast<std::uint64_t>(op), a), b);
}

std::uint64_t tag_const(Op op, std::uint64_t a, cplx c) {
  return combine(tag2(op, a, bits_of(c.real())), bits_of(c.imag()));
}

}  // namespace

void SimParams::validate() const {
  if (slots == 0 || !std::has_single_bit(slots)) throw InvariantError("slot count must be a power of two");
  if (max_level < 0) throw InvariantError("max_level must be non-negative");
  if (!(noise_stddev >= 0.0)) throw InvariantError("noise_stddev must be non-negative");
}

SlotCiphertext::SlotCiphertext(std::vector<cplx> slots, int level, std::uint64_t tag)
    : slots_(std::make_shared<const std::vector<cplx>>(std::move(slots))), level_(level), tag_(tag) {}

std::span<const cplx> SlotCiphertext::slots() const {
  if (!slots_) return {};
  return {slots_->data(), slots_->size()};
}

Simulator::Simulator(SimParams params) : params_(params) { params_.validate(); }

SlotCiphertext Simulator::encrypt(std::span<const cplx> values) const {
  if (values.size() > params_.slots) {
    throw ShapeError("message of length " + std::to_string(values.size()) + " exceeds " +
                     std::to_string(params_.slots) + " slots");
  }
  std::vector<cplx> slots(params_.slots, cplx{});
  std::copy(values.begin(), values.end(), slots.begin());
  const std::uint64_t tag = tag2(Op::kEncrypt, params_.seed, hash_values(slots));
  return SlotCiphertext(std::move(slots), params_.max_level, tag);
}

SlotCiphertext Simulator::encrypt_real(std::span<const double> values) const {
  std::vector<cplx> c(values.begin(), values.end());
  return encrypt(c);
}

std::vector<cplx> Simulator::decrypt(const SlotCiphertext& ct) const {
  auto s = ct.slots();
  return {s.begin(), s.end()};
}

std::vector<double> Simulator::decrypt_real(const SlotCiphertext& ct) const {
  std::vector<double> out;
  out.reserve(ct.size());
  for (const cplx& v : ct.slots()) out.push_back(v.real());
  return out;
}

void Simulator::check_same(const SlotCiphertext& a, const SlotCiphertext& b) const {
  if (a.size() != b.size()) throw ShapeError("ciphertexts have different slot counts");
}

int Simulator::level_after_mul(int level) const {
  if (level < 1) throw LevelExhaustedError("multiplication needs level >= 1, ciphertext has " + std::to_string(level));
  return level - 1;
}

SlotCiphertext Simulator::finish_mul(std::vector<cplx> slots, int level, std::uint64_t tag) const {
  if (params_.noise_stddev > 0.0) {
    // Seeded from the result's derivation tag, so evaluation order and
    // threading never change the noise a given ciphertext receives.
    std::mt19937_64 rng(combine(params_.seed, tag));
    std::normal_distribution<double> noise(0.0, params_.noise_stddev);
    for (cplx& v : slots) {
      const double re = noise(rng);
      const double im = noise(rng);
      v += cplx(re, im);
    }
  }
  return SlotCiphertext(std::move(slots), level, tag);
}

SlotCiphertext Simulator::add(const SlotCiphertext& a, const SlotCiphertext& b) const {
  check_same(a, b);
  std::vector<cplx> out(a.size());
  kernels::omp::add(a.slots(), b.slots(), out);
  ++add_;
  return SlotCiphertext(std::move(out), std::min(a.level(), b.level()), tag2(Op::kAdd, a.tag(), b.tag()));
}

SlotCiphertext Simulator::sub(const SlotCiphertext& a, const SlotCiphertext& b) const {
  check_same(a, b);
  std::vector<cplx> out(a.size());
  kernels::omp::sub(a.slots(), b.slots(), out);
  ++add_;
  return SlotCiphertext(std::move(out), std::min(a.level(), b.level()), tag2(Op::kSub, a.tag(), b.tag()));
}

SlotCiphertext Simulator::add_const(const SlotCiphertext& a, cplx c) const {
  std::vector<cplx> out(a.size());
  kernels::omp::shift(a.slots(), c, out);
  ++add_;
  return SlotCiphertext(std::move(out), a.level(), tag_const(Op::kAddConst, a.tag(), c));
}

SlotCiphertext Simulator::mul(const SlotCiphertext& a, const SlotCiphertext& b) const {
  check_same(a, b);
  const int level = level_after_mul(std::min(a.level(), b.level()));
  std::vector<cplx> out(a.size());
  kernels::omp::mul(a.slots(), b.slots(), out);
  ++mul_;
  return finish_mul(std::move(out), level, tag2(Op::kMul, a.tag(), b.tag()));
}

SlotCiphertext Simulator::mul_plain(const SlotCiphertext& a, std::span<const cplx> plain) const {
  if (plain.size() != a.size()) throw ShapeError("plaintext length differs from slot count");
  const int level = level_after_mul(a.level());
  std::vector<cplx> out(a.size());
  kernels::omp::mul(a.slots(), plain, out);
  ++mul_plain_;
  return finish_mul(std::move(out), level, tag2(Op::kMulPlain, a.tag(), hash_values(plain)));
}

SlotCiphertext Simulator::mul_const(const SlotCiphertext& a, cplx c) const {
  const int level = level_after_mul(a.level());
  std::vector<cplx> out(a.size());
  kernels::omp::scale(a.slots(), c, out);
  ++mul_const_;
  return finish_mul(std::move(out), level, tag_const(Op::kMulConst, a.tag(), c));
}

SlotCiphertext Simulator::rotate(const SlotCiphertext& a, std::ptrdiff_t steps) const {
  const std::size_t s = kernels::normalize_rotation(steps, a.size());
  ++rotate_;
  if (s == 0) return a;
  std::vector<cplx> out(a.size());
  kernels::omp::rotate(a.slots(), static_cast<std::ptrdiff_t>(s), out);
  return SlotCiphertext(std::move(out), a.level(), tag2(Op::kRotate, a.tag(), s));
}

std::vector<SlotCiphertext> Simulator::rotate_batch(const SlotCiphertext& a,
                                                    std::span<const std::ptrdiff_t> steps) const {
  std::vector<SlotCiphertext> out;
  out.reserve(steps.size());
  for (std::ptrdiff_t s : steps) out.push_back(rotate(a, s));
  return out;
}

SlotCiphertext Simulator::conjugate(const SlotCiphertext& a) const {
  std::vector<cplx> out(a.size());
  kernels::omp::conjugate(a.slots(), out);
  ++conjugate_;
  return SlotCiphertext(std::move(out), a.level(), tag2(Op::kConj, a.tag(), 0));
}

SlotCiphertext Simulator::constant_like(const SlotCiphertext& a, cplx c) const {
  return SlotCiphertext(std::vector<cplx>(a.size(), c), a.level(), tag_const(Op::kConst, a.tag(), c));
}

OpCounts Simulator::counts() const {
  return OpCounts{add_.load(), mul_.load(), mul_plain_.load(), mul_const_.load(), rotate_.load(), conjugate_.load()};
}

void Simulator::reset_counts() const {
  add_ = 0;
  mul_ = 0;
  mul_plain_ = 0;
  mul_const_ = 0;
  rotate_ = 0;
  conjugate_ = 0;
}

std::vector<cplx> slot_mask(std::size_t slots, std::size_t begin, std::size_t count, cplx value) {
  if (begin + count > slots) throw ShapeError("mask exceeds slot count");
  std::vector<cplx> m(slots, cplx{});
  std::fill_n(m.begin() + static_cast<std::ptrdiff_t>(begin), count, value);
  return m;
}

}  // namespace chebmod
