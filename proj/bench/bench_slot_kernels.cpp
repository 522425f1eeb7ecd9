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
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "chebmod/fitting.hpp"
#include "chebmod/modp.hpp"
#include "chebmod/simulator.hpp"
#include "chebmod/slot_kernels.hpp"

using chebmod::kernels::cplx;

namespace {

std::vector<cplx> random_slots(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& x : v) x = cplx(d(rng), d(rng));
  return v;
}

template <void (*Kernel)(std::span<const cplx>, std::span<const cplx>, std::span<cplx>)>
void BM_Binary(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_slots(n, 1);
  const auto b = random_slots(n, 2);
  std::vector<cplx> out(n);
  for (auto _ : state) {
    Kernel(a, b, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

template <void (*Kernel)(std::span<const cplx>, std::ptrdiff_t, std::span<cplx>)>
void BM_Rotate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_slots(n, 3);
  std::vector<cplx> out(n);
  for (auto _ : state) {
    Kernel(a, 2000, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void BM_ModP210(benchmark::State& state) {
  chebmod::SimParams params;
  params.slots = static_cast<std::size_t>(state.range(0));
  const chebmod::Simulator sim(params);
  const auto plan = chebmod::fit_modp(4, 139, 210);
  std::vector<double> xs(params.slots);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<double>(i % 140);
  const auto ct = sim.encrypt_real(xs);
  for (auto _ : state) benchmark::DoNotOptimize(chebmod::apply_plan(sim, ct, plan));
}

}  // namespace

BENCHMARK(BM_Binary<chebmod::kernels::serial::mul>)->Name("mul/serial")->Arg(1 << 12)->Arg(1 << 15);
BENCHMARK(BM_Binary<chebmod::kernels::omp::mul>)->Name("mul/omp")->Arg(1 << 12)->Arg(1 << 15);
BENCHMARK(BM_Binary<chebmod::kernels::serial::add>)->Name("add/serial")->Arg(1 << 15);
BENCHMARK(BM_Binary<chebmod::kernels::omp::add>)->Name("add/omp")->Arg(1 << 15);
BENCHMARK(BM_Rotate<chebmod::kernels::serial::rotate>)->Name("rotate/serial")->Arg(1 << 15);
BENCHMARK(BM_Rotate<chebmod::kernels::omp::rotate>)->Name("rotate/omp")->Arg(1 << 15);
BENCHMARK(BM_ModP210)->Arg(1 << 12)->Arg(1 << 15)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
