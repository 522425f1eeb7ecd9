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
#include "chebmod/packing.hpp"

#include <bit>
#include <exception>
#include <numeric>
#include <string>

#include "chebmod/paterson_stockmeyer.hpp"

namespace chebmod {

namespace {

std::string at(std::size_t vec, std::size_t idx) {
  return "vector " + std::to_string(vec) + ", element " + std::to_string(idx);
}

long checked_product(std::span<const long> factors) {
  long p = 1;
  for (long f : factors) {
    if (f < 2) throw DomainError("radix/modulus must be >= 2, got " + std::to_string(f));
    if (p > kMaxPackedRange / f) {
      throw GuardError("packed range exceeds 2^24");
    }
    p *= f;
  }
  return p;
}

std::size_t common_length(std::span<const std::vector<long>> values, std::size_t layers) {
  if (values.size() != layers) {
    throw ShapeError("expected " + std::to_string(layers) + " layers, got " + std::to_string(values.size()));
  }
  for (const auto& v : values) {
    if (v.size() != values.front().size()) throw ShapeError("layer vectors differ in length");
  }
  return values.empty() ? 0 : values.front().size();
}

}  // namespace

// ---- VecConcat ----

std::size_t ConcatLayout::total() const { return std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}); }

void ConcatLayout::validate(std::size_t slots) const {
  for (std::size_t s : sizes) {
    if (s == 0) throw ShapeError("concat sizes must be positive");
  }
  if (total() > slots) {
    throw ShapeError("concat layout needs " + std::to_string(total()) + " slots, have " + std::to_string(slots));
  }
}

std::vector<cplx> vec_pack(std::span<const std::vector<cplx>> vectors, const ConcatLayout& layout,
                           std::size_t slots) {
  layout.validate(slots);
  if (vectors.size() != layout.sizes.size()) throw ShapeError("vector count differs from concat layout");
  std::vector<cplx> out;
  out.reserve(slots);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != layout.sizes[i]) {
      throw ShapeError("vector " + std::to_string(i) + " has length " + std::to_string(vectors[i].size()) +
                       ", layout says " + std::to_string(layout.sizes[i]));
    }
    out.insert(out.end(), vectors[i].begin(), vectors[i].end());
  }
  out.resize(slots, cplx{});
  return out;
}

std::vector<cplx> vec_pack(std::span<const std::vector<double>> vectors, const ConcatLayout& layout,
                           std::size_t slots) {
  std::vector<std::vector<cplx>> c;
  c.reserve(vectors.size());
  for (const auto& v : vectors) c.push_back(to_complex(v));
  return vec_pack(c, layout, slots);
}

std::vector<SlotCiphertext> vec_unpack(const Simulator& sim, const SlotCiphertext& ct, const ConcatLayout& layout) {
  layout.validate(ct.size());
  std::vector<std::ptrdiff_t> offsets;
  offsets.reserve(layout.sizes.size());
  std::size_t offset = 0;
  for (std::size_t s : layout.sizes) {
    offsets.push_back(static_cast<std::ptrdiff_t>(offset));
    offset += s;
  }
  std::vector<SlotCiphertext> rotated = sim.rotate_batch(ct, offsets);
  std::vector<SlotCiphertext> out;
  out.reserve(rotated.size());
  for (std::size_t i = 0; i < rotated.size(); ++i) {
    out.push_back(sim.mul_plain(rotated[i], slot_mask(ct.size(), 0, layout.sizes[i])));
  }
  return out;
}

SlotCiphertext repack_repeat(const Simulator& sim, const SlotCiphertext& ct, std::size_t dx, std::size_t r) {
  if (dx == 0 || r == 0) throw ShapeError("repack needs dx >= 1 and r >= 1");
  if (r > ct.size() / dx) throw ShapeError("repack of " + std::to_string(r) + " copies does not fit");
  const int top = std::bit_width(r) - 1;
  // copies[j] holds 2^j consecutive copies of x
  std::vector<SlotCiphertext> copies{ct};
  for (int j = 1; j <= top; ++j) {
    const SlotCiphertext& prev = copies.back();
    const auto width = static_cast<std::ptrdiff_t>((std::size_t{1} << (j - 1)) * dx);
    copies.push_back(sim.add(prev, sim.rotate(prev, -width)));
  }
  SlotCiphertext acc = copies.back();
  std::size_t placed = std::size_t{1} << top;
  for (int j = top - 1; j >= 0; --j) {
    if (((r >> j) & 1U) == 0) continue;
    acc = sim.add(acc, sim.rotate(copies[static_cast<std::size_t>(j)], -static_cast<std::ptrdiff_t>(placed * dx)));
    placed += std::size_t{1} << j;
  }
  return acc;
}

// ---- ImgConcat ----

std::vector<cplx> img_pack(std::span<const double> a, std::span<const double> b, std::size_t slots) {
  if (a.size() > slots || b.size() > slots) throw ShapeError("img_pack input longer than slot count");
  std::vector<cplx> out(slots, cplx{});
  for (std::size_t j = 0; j < a.size(); ++j) out[j] += a[j];
  for (std::size_t j = 0; j < b.size(); ++j) out[j] += cplx(0.0, b[j]);
  return out;
}

std::pair<SlotCiphertext, SlotCiphertext> img_unpack(const Simulator& sim, const SlotCiphertext& ct, std::size_t n1,
                                                     std::size_t n2) {
  if (n1 > ct.size() || n2 > ct.size()) throw ShapeError("img_unpack length exceeds slot count");
  const SlotCiphertext conj = sim.conjugate(ct);
  SlotCiphertext re = sim.mul_plain(sim.add(ct, conj), slot_mask(ct.size(), 0, n1, 0.5));
  SlotCiphertext im = sim.mul_plain(sim.sub(ct, conj), slot_mask(ct.size(), 0, n2, cplx(0.0, -0.5)));
  return {std::move(re), std::move(im)};
}

// ---- BitStack ----

BitStackLayout BitStackLayout::binary(const std::vector<int>& bit_widths, int degree) {
  std::vector<long> radices;
  for (int l : bit_widths) {
    if (l < 1 || l > 24) throw DomainError("bit width must lie in [1, 24], got " + std::to_string(l));
    radices.push_back(1L << l);
  }
  return with_radices(radices, degree);
}

BitStackLayout BitStackLayout::with_radices(const std::vector<long>& radices, int degree) {
  BitStackLayout layout;
  layout.radices = radices;
  layout.validate();
  for (std::size_t i = 0; i + 1 < radices.size(); ++i) {
    layout.plans.push_back(fit_modp(radices[i], layout.range_from(i) - 1, degree));
  }
  return layout;
}

long BitStackLayout::range_from(std::size_t layer) const {
  return checked_product(std::span<const long>(radices).subspan(layer));
}

void BitStackLayout::validate() const {
  if (radices.empty()) throw ShapeError("bitstack needs at least one layer");
  (void)range_from(0);
}

std::vector<long> bitstack_pack(std::span<const std::vector<long>> values, const BitStackLayout& layout) {
  layout.validate();
  const std::size_t len = common_length(values, layout.layers());
  std::vector<long> out(len, 0);
  long weight = 1;
  for (std::size_t i = 0; i < layout.layers(); ++i) {
    const long r = layout.radices[i];
    for (std::size_t j = 0; j < len; ++j) {
      const long v = values[i][j];
      if (v < 0 || v >= r) {
        throw RangeError(at(i, j) + ": value " + std::to_string(v) + " outside [0, " + std::to_string(r) + ")");
      }
      out[j] += v * weight;
    }
    weight *= r;
  }
  return out;
}

std::vector<SlotCiphertext> bitstack_unpack(const Simulator& sim, const SlotCiphertext& ct,
                                            const BitStackLayout& layout) {
  layout.validate();
  if (layout.plans.size() + 1 < layout.layers()) throw InvariantError("bitstack layout is missing a layer plan");
  const SimBackend be{sim};
  std::vector<SlotCiphertext> out;
  SlotCiphertext x = ct;
  for (std::size_t i = 0; i + 1 < layout.layers(); ++i) {
    const long r = layout.radices[i];
    const ModPlan& plan = layout.plans[i];
    if (plan.modulus != r) throw InvariantError("plan modulus differs from layer radix");
    // (x mod r) / r, with 1/r folded into the plan scale
    SlotCiphertext scaled = apply_plan(sim, x, plan, 1.0 / static_cast<double>(r));
    if (std::has_single_bit(static_cast<unsigned long>(r))) {
      out.push_back(ps::mul_by_pow2_additively(be, scaled, std::countr_zero(static_cast<unsigned long>(r))));
    } else {
      out.push_back(ps::mul_by_int_additively(be, scaled, r));
    }
    x = sim.sub(sim.mul_const(x, 1.0 / static_cast<double>(r)), scaled);
  }
  out.push_back(std::move(x));
  return out;
}

// ---- CRTStack ----

long mod_inverse(long a, long m) {
  if (m < 1) throw DomainError("modulus must be positive");
  long old_r = ((a % m) + m) % m, r = m, old_s = 1, s = 0;
  while (r != 0) {
    const long q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
  }
  if (old_r != 1) throw DomainError(std::to_string(a) + " has no inverse modulo " + std::to_string(m));
  return ((old_s % m) + m) % m;
}

CrtBasis CrtBasis::make(const std::vector<long>& moduli) {
  CrtBasis b;
  b.moduli = moduli;
  if (moduli.empty()) throw ShapeError("CRT basis needs at least one modulus");
  b.product = checked_product(moduli);
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    for (std::size_t j = i + 1; j < moduli.size(); ++j) {
      if (std::gcd(moduli[i], moduli[j]) != 1) {
        throw DomainError("moduli " + std::to_string(moduli[i]) + " and " + std::to_string(moduli[j]) +
                          " are not coprime");
      }
    }
  }
  for (long pi : moduli) {
    const long rest = b.product / pi;
    b.recombinants.push_back(rest * mod_inverse(rest % pi, pi) % b.product);
  }
  return b;
}

CrtBasis CrtBasis::make(const std::vector<long>& moduli, int degree) {
  CrtBasis b = make(moduli);
  for (long pi : moduli) b.plans.push_back(fit_modp(pi, b.product - 1, degree));
  return b;
}

void CrtBasis::validate() const {
  const CrtBasis fresh = make(moduli);
  if (fresh.product != product || fresh.recombinants != recombinants) {
    throw InvariantError("CRT recombination constants are inconsistent");
  }
}

std::vector<long> crt_pack(std::span<const std::vector<long>> values, const CrtBasis& basis) {
  const std::size_t len = common_length(values, basis.moduli.size());
  std::vector<long> out(len, 0);
  for (std::size_t i = 0; i < basis.moduli.size(); ++i) {
    const long pi = basis.moduli[i];
    for (std::size_t j = 0; j < len; ++j) {
      const long v = values[i][j];
      if (v < 0 || v >= pi) {
        throw RangeError(at(i, j) + ": value " + std::to_string(v) + " outside [0, " + std::to_string(pi) + ")");
      }
      out[j] = (out[j] + v * basis.recombinants[i]) % basis.product;
    }
  }
  return out;
}

std::vector<SlotCiphertext> crt_unpack(const Simulator& sim, const SlotCiphertext& ct, const CrtBasis& basis,
                                       bool parallel) {
  const std::size_t d = basis.moduli.size();
  if (basis.plans.size() != d) throw InvariantError("CRT basis is missing a layer plan");
  for (std::size_t i = 0; i < d; ++i) {
    if (basis.plans[i].modulus != basis.moduli[i]) throw InvariantError("plan modulus differs from CRT modulus");
  }
  std::vector<SlotCiphertext> out(d);
  std::vector<std::exception_ptr> errors(d);
  const auto layers = static_cast<std::ptrdiff_t>(d);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::ptrdiff_t i = 0; i < layers; ++i) {
    const auto li = static_cast<std::size_t>(i);
    try {
      out[li] = apply_plan(sim, ct, basis.plans[li]);
    } catch (...) {
      errors[li] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

// ---- helpers ----

std::vector<cplx> to_complex(std::span<const long> v) {
  std::vector<cplx> out;
  out.reserve(v.size());
  for (long x : v) out.emplace_back(static_cast<double>(x), 0.0);
  return out;
}

std::vector<cplx> to_complex(std::span<const double> v) { return {v.begin(), v.end()}; }

}  // namespace chebmod
