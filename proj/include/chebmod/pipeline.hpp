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
#include <variant>
#include <vector>

#include "chebmod/packing.hpp"

namespace chebmod {

// Concatenates consecutive vectors greedily into slot-sized groups.  Empty
// sizes means "whatever arrives"; otherwise they must match the inputs.
struct ConcatStage {
  std::vector<std::size_t> sizes;
};

// Stacks consecutive groups of d vectors (d = number of layers); a short
// final group is completed with zero layers.
struct CrtStage {
  CrtBasis basis;
};
struct BitStackStage {
  BitStackLayout layout;
};

// Pairs consecutive vectors as real and imaginary parts.  Must be last.
// Nonzero n1/n2 cap the lengths of the real/imaginary members.
struct ImgPairStage {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
};

using PackStage = std::variant<ConcatStage, CrtStage, BitStackStage, ImgPairStage>;

struct PackLayout {
  std::vector<PackStage> stages;
};

/// Vector lengths entering each stage; entry stages.size() holds the
/// lengths of the final packed vectors (one ciphertext each).
std::vector<std::vector<std::size_t>> trace_shapes(const PackLayout& layout, std::span<const std::size_t> input_sizes,
                                                   std::size_t slots);

/// One slot-length plaintext per ciphertext.
std::vector<std::vector<cplx>> pipeline_pack(std::span<const std::vector<double>> data, const PackLayout& layout,
                                             std::size_t slots);

/// Applies the stage unpackers in reverse order; result i holds input
/// vector i in its leading input_sizes[i] slots.
std::vector<SlotCiphertext> pipeline_unpack(const Simulator& sim, std::span<const SlotCiphertext> cts,
                                            const PackLayout& layout, std::span<const std::size_t> input_sizes);

}  // namespace chebmod
