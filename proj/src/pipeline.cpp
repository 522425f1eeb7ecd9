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
#include "chebmod/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace chebmod {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

using Groups = std::vector<std::vector<std::size_t>>;  // member indices per output vector

Groups concat_groups(std::span<const std::size_t> sizes, std::size_t slots) {
  Groups groups;
  std::size_t used = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] > slots) {
      throw ShapeError("vector " + std::to_string(i) + " of length " + std::to_string(sizes[i]) + " exceeds " +
                       std::to_string(slots) + " slots");
    }
    if (groups.empty() || used + sizes[i] > slots) {
      groups.emplace_back();
      used = 0;
    }
    groups.back().push_back(i);
    used += sizes[i];
  }
  return groups;
}

Groups chunk_groups(std::size_t count, std::size_t width) {
  Groups groups;
  for (std::size_t i = 0; i < count; ++i) {
    if (i % width == 0) groups.emplace_back();
    groups.back().push_back(i);
  }
  return groups;
}

std::size_t stage_width(const PackStage& stage) {
  return std::visit(overloaded{[](const ConcatStage&) -> std::size_t { return 0; },
                               [](const CrtStage& s) { return s.basis.moduli.size(); },
                               [](const BitStackStage& s) { return s.layout.layers(); },
                               [](const ImgPairStage&) -> std::size_t { return 2; }},
                    stage);
}

Groups stage_groups(const PackStage& stage, std::span<const std::size_t> sizes, std::size_t slots, std::size_t index) {
  if (const auto* c = std::get_if<ConcatStage>(&stage)) {
    if (!c->sizes.empty() && !std::equal(c->sizes.begin(), c->sizes.end(), sizes.begin(), sizes.end())) {
      throw ShapeError("stage " + std::to_string(index) + ": concat sizes do not match incoming vector lengths");
    }
    return concat_groups(sizes, slots);
  }
  const std::size_t width = stage_width(stage);
  if (width == 0) throw ShapeError("stage " + std::to_string(index) + " has no layers");
  return chunk_groups(sizes.size(), width);
}

std::size_t group_length(const PackStage& stage, const std::vector<std::size_t>& group,
                         std::span<const std::size_t> sizes) {
  std::size_t len = 0;
  for (std::size_t m : group) {
    len = std::holds_alternative<ConcatStage>(stage) ? len + sizes[m] : std::max(len, sizes[m]);
  }
  return len;
}

void check_layout(const PackLayout& layout) {
  for (std::size_t s = 0; s < layout.stages.size(); ++s) {
    if (std::holds_alternative<ImgPairStage>(layout.stages[s]) && s + 1 != layout.stages.size()) {
      throw ShapeError("imgpair must be the last stage");
    }
  }
}

long as_integer(const cplx& v, std::size_t stage, std::size_t vec, std::size_t idx) {
  const double r = std::round(v.real());
  if (v.imag() != 0.0 || std::abs(v.real() - r) > 1e-9) {
    throw RangeError("stage " + std::to_string(stage) + ", vector " + std::to_string(vec) + ", element " +
                     std::to_string(idx) + ": stacking needs integer values");
  }
  return static_cast<long>(r);
}

}  // namespace

std::vector<std::vector<std::size_t>> trace_shapes(const PackLayout& layout, std::span<const std::size_t> input_sizes,
                                                   std::size_t slots) {
  check_layout(layout);
  std::vector<std::vector<std::size_t>> shapes{{input_sizes.begin(), input_sizes.end()}};
  for (std::size_t s = 0; s < layout.stages.size(); ++s) {
    const auto& stage = layout.stages[s];
    const auto& in = shapes.back();
    std::vector<std::size_t> next;
    for (const auto& g : stage_groups(stage, in, slots, s)) next.push_back(group_length(stage, g, in));
    if (const auto* img = std::get_if<ImgPairStage>(&stage)) {
      for (std::size_t i = 0; i < in.size(); ++i) {
        const std::size_t cap = (i % 2 == 0) ? img->n1 : img->n2;
        if (cap != 0 && in[i] > cap) {
          throw ShapeError("stage " + std::to_string(s) + ": vector " + std::to_string(i) + " longer than imgpair bound");
        }
      }
    }
    shapes.push_back(std::move(next));
  }
  for (std::size_t len : shapes.back()) {
    if (len > slots) throw ShapeError("packed vector exceeds slot count");
  }
  return shapes;
}

std::vector<std::vector<cplx>> pipeline_pack(std::span<const std::vector<double>> data, const PackLayout& layout,
                                             std::size_t slots) {
  std::vector<std::size_t> sizes;
  for (const auto& v : data) sizes.push_back(v.size());
  const auto shapes = trace_shapes(layout, sizes, slots);

  std::vector<std::vector<cplx>> cur;
  for (const auto& v : data) cur.push_back(to_complex(v));

  for (std::size_t s = 0; s < layout.stages.size(); ++s) {
    const auto& stage = layout.stages[s];
    const auto groups = stage_groups(stage, shapes[s], slots, s);
    std::vector<std::vector<cplx>> next;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      const auto& g = groups[gi];
      const std::size_t len = shapes[s + 1][gi];
      std::visit(overloaded{
                     [&](const ConcatStage&) {
                       std::vector<cplx> out;
                       for (std::size_t m : g) out.insert(out.end(), cur[m].begin(), cur[m].end());
                       next.push_back(std::move(out));
                     },
                     [&](const ImgPairStage&) {
                       std::vector<cplx> out(len, cplx{});
                       for (std::size_t k = 0; k < g.size(); ++k) {
                         const cplx unit = k == 0 ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
                         for (std::size_t j = 0; j < cur[g[k]].size(); ++j) {
                           if (cur[g[k]][j].imag() != 0.0) throw ShapeError("imgpair inputs must be real");
                           out[j] += unit * cur[g[k]][j].real();
                         }
                       }
                       next.push_back(std::move(out));
                     },
                     [&](const auto& stack) {
                       const std::size_t width = stage_width(stage);
                       std::vector<std::vector<long>> layers(width, std::vector<long>(len, 0));
                       for (std::size_t k = 0; k < g.size(); ++k) {
                         for (std::size_t j = 0; j < cur[g[k]].size(); ++j) {
                           layers[k][j] = as_integer(cur[g[k]][j], s, g[k], j);
                         }
                       }
                       std::vector<long> packed;
                       try {
                         if constexpr (std::is_same_v<std::decay_t<decltype(stack)>, CrtStage>) {
                           packed = crt_pack(layers, stack.basis);
                         } else {
                           packed = bitstack_pack(layers, stack.layout);
                         }
                       } catch (const RangeError& e) {
                         throw RangeError("stage " + std::to_string(s) + ", group " + std::to_string(gi) + ": " +
                                          e.what());
                       }
                       next.push_back(to_complex(packed));
                     }},
                 stage);
    }
    cur = std::move(next);
  }
  for (auto& v : cur) v.resize(slots, cplx{});
  return cur;
}

std::vector<SlotCiphertext> pipeline_unpack(const Simulator& sim, std::span<const SlotCiphertext> cts,
                                            const PackLayout& layout, std::span<const std::size_t> input_sizes) {
  const auto shapes = trace_shapes(layout, input_sizes, sim.slots());
  if (cts.size() != shapes.back().size()) {
    throw ShapeError("expected " + std::to_string(shapes.back().size()) + " ciphertexts, got " +
                     std::to_string(cts.size()));
  }
  std::vector<SlotCiphertext> cur(cts.begin(), cts.end());
  for (std::size_t s = layout.stages.size(); s-- > 0;) {
    const auto& stage = layout.stages[s];
    const auto& in_sizes = shapes[s];
    const auto groups = stage_groups(stage, in_sizes, sim.slots(), s);
    std::vector<SlotCiphertext> prev(in_sizes.size());
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      const auto& g = groups[gi];
      std::vector<SlotCiphertext> parts = std::visit(
          overloaded{[&](const ConcatStage&) {
                       ConcatLayout cl;
                       for (std::size_t m : g) cl.sizes.push_back(in_sizes[m]);
                       return vec_unpack(sim, cur[gi], cl);
                     },
                     [&](const CrtStage& c) { return crt_unpack(sim, cur[gi], c.basis); },
                     [&](const BitStackStage& b) { return bitstack_unpack(sim, cur[gi], b.layout); },
                     [&](const ImgPairStage&) {
                       const std::size_t n2 = g.size() > 1 ? in_sizes[g[1]] : 0;
                       auto [re, im] = img_unpack(sim, cur[gi], in_sizes[g[0]], n2);
                       return std::vector<SlotCiphertext>{std::move(re), std::move(im)};
                     }},
          stage);
      for (std::size_t k = 0; k < g.size(); ++k) prev[g[k]] = std::move(parts[k]);
    }
    cur = std::move(prev);
  }
  return cur;
}

}  // namespace chebmod
