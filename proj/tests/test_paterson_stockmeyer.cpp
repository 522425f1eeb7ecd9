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
#include <doctest.h>

#include <cmath>

#include "chebmod/fitting.hpp"
#include "chebmod/modp.hpp"
#include "chebmod/paterson_stockmeyer.hpp"
#include "chebmod/simulator.hpp"
#include "support/generators.hpp"

using namespace chebmod;
using chebmod::testing::Gen;
using ps::PlainBackend;

namespace {

SimParams small_sim(std::size_t slots = 64) {
  SimParams p;
  p.slots = slots;
  return p;
}

}  // namespace

TEST_SUITE("psev") {

TEST_CASE("balanced schedules") {
  auto s210 = ps::plan_schedule(210);
  CHECK(s210.k == 10);
  CHECK(s210.m == 5);
  CHECK(s210.capacity() == 310);
  auto s1 = ps::plan_schedule(1);
  CHECK(s1.k == 1);
  CHECK(s1.m == 1);
  auto s45 = ps::plan_schedule(45);
  CHECK(s45.k == 5);
  CHECK(s45.m == 4);
  for (int d = 1; d <= 400; ++d) {
    auto s = ps::plan_schedule(d);
    CHECK((s.capacity() > d || (d <= s.k && s.m == 1)));
    CHECK(s.k * ((1 << (s.m - 1)) - 1) <= d);
  }
}

TEST_CASE("min-depth schedules never lose to balanced ones") {
  for (int d = 1; d <= 300; ++d) {
    auto a = ps::plan_schedule(d);
    auto b = ps::plan_schedule_min_depth(d);
    CHECK(b.capacity() >= d);
    CHECK(ps::predicted_depth(b, d) <= ps::predicted_depth(a, d));
  }
  auto s90 = ps::plan_schedule_min_depth(90);
  CHECK(ps::predicted_depth(s90, 90) == 7);
  auto s210 = ps::plan_schedule_min_depth(210);
  CHECK(ps::predicted_depth(s210, 210) == 8);
}

TEST_CASE("power basis at u = 0.5, k = 3") {
  PlainBackend be;
  ps::PsSchedule s{3, 3, 1.0};
  auto basis = ps::compute_power_basis(be, 0.5, s);
  REQUIRE(basis.baby.size() == 3);
  CHECK(basis.baby[0] == doctest::Approx(0.5));
  CHECK(basis.baby[1] == doctest::Approx(-0.5));
  CHECK(basis.baby[2] == doctest::Approx(-1.0));
  CHECK(basis.giant[0] == basis.baby[2]);
  CHECK(basis.giant[1] == doctest::Approx(chebyshev_t(6, 0.5)));
  CHECK(basis.giant[2] == doctest::Approx(chebyshev_t(12, 0.5)));
}

TEST_CASE("power basis on the simulator") {
  Simulator sim(small_sim());
  SimBackend be{sim};
  Gen g(31);
  const auto u = g.reals(sim.slots(), -1.0, 1.0);
  const auto ct = sim.encrypt_real(u);
  ps::PsSchedule s{10, 5, 1.0};
  auto basis = ps::compute_power_basis(be, ct, s);
  double worst = 0.0;
  auto compare = [&](const SlotCiphertext& e, int n) {
    const auto v = sim.decrypt_real(e);
    for (std::size_t i = 0; i < v.size(); ++i) worst = std::max(worst, std::abs(v[i] - chebyshev_t(n, u[i])));
  };
  for (int i = 1; i <= 10; ++i) compare(basis.baby[static_cast<std::size_t>(i - 1)], i);
  for (int j = 0; j < 5; ++j) compare(basis.giant[static_cast<std::size_t>(j)], 10 << j);
  for (std::size_t j = 0; j < basis.top.size(); ++j) compare(basis.top[j], 10 * ((2 << j) - 1));
  CHECK(worst <= 1e-9);
  // T_10 at depth 4, T_160 four squarings later
  CHECK(basis.levels_consumed == 8);
}

TEST_CASE("degree-7 series at 50 points") {
  Gen g(32);
  const auto c = g.reals(8, -1.0, 1.0);
  PlainBackend be;
  const auto sched = ps::plan_schedule(7);
  for (int i = 0; i < 50; ++i) {
    const double u = -1.0 + 2.0 * i / 49.0;
    CHECK(std::abs(ps::eval_ps(be, std::span<const double>(c), u, sched) - eval_clenshaw_unit(c, u)) <= 1e-10);
  }
}

TEST_CASE("constant series costs no multiplication") {
  Simulator sim(small_sim());
  SimBackend be{sim};
  const auto ct = sim.encrypt_real(std::vector<double>(sim.slots(), 0.25));
  sim.reset_counts();
  const std::vector<double> c{0.75, 0.0, 0.0};
  auto out = ps::eval_ps(be, std::span<const double>(c), ct, ps::plan_schedule(2));
  CHECK(sim.counts().multiplications() == 0);
  CHECK(out.level() == ct.level());
  for (double v : sim.decrypt_real(out)) CHECK(v == 0.75);
}

TEST_CASE("degree-210 evaluation depth on the simulator") {
  Simulator sim(small_sim());
  SimBackend be{sim};
  Gen g(33);
  const auto c = g.reals(211, -1.0, 1.0);
  const auto u = g.reals(sim.slots(), -1.0, 1.0);
  const auto ct = sim.encrypt_real(u);
  for (auto sched : {ps::plan_schedule(210), ps::plan_schedule_min_depth(210)}) {
    auto out = ps::eval_ps(be, std::span<const double>(c), ct, sched);
    const int used = ct.level() - out.level();
    CHECK(used <= 11);
    CHECK(used == ps::predicted_depth(sched, 210));
    const auto v = sim.decrypt_real(out);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(v[i] - eval_clenshaw_unit(c, u[i])) <= 1e-8);
  }
}

TEST_CASE("predicted depth matches the simulator for every degree") {
  Simulator sim(small_sim(8));
  SimBackend be{sim};
  const auto ct = sim.encrypt_real(std::vector<double>(8, 0.3));
  Gen g(34);
  for (int d = 1; d <= 256; ++d) {
    const auto c = g.reals(static_cast<std::size_t>(d) + 1, -1.0, 1.0);
    for (auto sched : {ps::plan_schedule(d), ps::plan_schedule_min_depth(d)}) {
      auto out = ps::eval_ps(be, std::span<const double>(c), ct, sched);
      CHECK(ct.level() - out.level() == ps::predicted_depth(sched, d));
    }
  }
}

TEST_CASE("oracle equivalence on random series") {
  Gen g(35);
  PlainBackend be;
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int d = static_cast<int>(g.integer(1, 256));
    const auto c = g.reals(static_cast<std::size_t>(d) + 1, -1.0, 1.0);
    const double u = g.uniform(-1.0, 1.0);
    const auto sched = (t % 2 == 0) ? ps::plan_schedule(d) : ps::plan_schedule_min_depth(d);
    worst = std::max(worst, std::abs(ps::eval_ps(be, std::span<const double>(c), u, sched) - eval_clenshaw_unit(c, u)));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("division variant on fitted plans and decaying series") {
  PlainBackend be;
  for (auto [p, upper, degree] : {std::tuple{4L, 29L, 45}, std::tuple{4L, 139L, 210}, std::tuple{7L, 139L, 210}}) {
    const ModPlan plan = fit_modp(p, upper, degree);
    const auto sched = ps::plan_schedule(degree);
    for (long x = 0; x <= upper; ++x) {
      const double u = map_to_unit(static_cast<double>(x), static_cast<double>(upper));
      const double a = ps::eval_ps(be, plan.series, u, sched, ps::PsVariant::kDivision);
      CHECK(std::abs(a - eval_clenshaw_unit(plan.series.coeffs, u)) <= 1e-9);
    }
  }
  Gen g(36);
  for (int t = 0; t < 200; ++t) {
    const int d = static_cast<int>(g.integer(1, 40));
    std::vector<double> c(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) c[static_cast<std::size_t>(i)] = g.uniform(-1.0, 1.0) * std::pow(0.7, i);
    const double u = g.uniform(-1.0, 1.0);
    const double a = ps::eval_ps(be, std::span<const double>(c), u, ps::plan_schedule(d), ps::PsVariant::kDivision);
    CHECK(std::abs(a - eval_clenshaw_unit(c, u)) <= 1e-9);
  }
}

TEST_CASE("degree overflow") {
  PlainBackend be;
  const std::vector<double> c(40, 0.5);
  CHECK_THROWS_AS(ps::eval_ps(be, std::span<const double>(c), 0.1, ps::PsSchedule{3, 3, 1.0}), InvariantError);
  CHECK_THROWS_AS(ps::eval_ps(be, std::span<const double>(), 0.1, ps::PsSchedule{3, 3, 1.0}), InvariantError);
}

TEST_CASE("consumed levels do not depend on slot values") {
  Simulator sim(small_sim(16));
  SimBackend be{sim};
  Gen g(37);
  const auto c = g.reals(91, -1.0, 1.0);
  const auto sched = ps::plan_schedule(90);
  int first = -1;
  for (int t = 0; t < 10; ++t) {
    const auto ct = sim.encrypt_real(g.reals(16, -1.0, 1.0));
    const int used = ct.level() - ps::eval_ps(be, std::span<const double>(c), ct, sched).level();
    if (first < 0) first = used;
    CHECK(used == first);
  }
}

TEST_CASE("folded scale is linear") {
  Gen g(38);
  PlainBackend be;
  for (int t = 0; t < 200; ++t) {
    const int d = static_cast<int>(g.integer(1, 120));
    const auto c = g.reals(static_cast<std::size_t>(d) + 1, -1.0, 1.0);
    const double u = g.uniform(-1.0, 1.0);
    const double s = g.uniform(-4.0, 4.0);
    auto sched = ps::plan_schedule(d);
    const double base = ps::eval_ps(be, std::span<const double>(c), u, sched);
    sched.folded_scale = s;
    CHECK(std::abs(ps::eval_ps(be, std::span<const double>(c), u, sched) - s * base) <= 1e-9);
  }
}

TEST_CASE("Chebyshev long division") {
  Gen g(39);
  for (int t = 0; t < 200; ++t) {
    const auto num = g.reals(static_cast<std::size_t>(g.integer(1, 60)), -1.0, 1.0);
    auto den = g.reals(static_cast<std::size_t>(g.integer(1, 20)), -0.1, 0.1);
    den.back() = 1.0;
    const auto qr = ps::divide(num, den);
    CHECK(qr.remainder.size() < std::max<std::size_t>(den.size(), 2));
    auto back = ps::multiply(qr.quotient, den);
    back.resize(std::max(back.size(), num.size()), 0.0);
    for (std::size_t i = 0; i < qr.remainder.size(); ++i) back[i] += qr.remainder[i];
    double worst = 0.0;
    for (std::size_t i = 0; i < back.size(); ++i) {
      worst = std::max(worst, std::abs(back[i] - (i < num.size() ? num[i] : 0.0)));
    }
    CHECK(worst <= 1e-12);
  }
  // dividing by T_n leaves the low coefficients and halves the shifted high ones
  const std::vector<double> f{1, 2, 3, 4, 5};
  const std::vector<double> t3{0, 0, 0, 1};
  const auto qr = ps::divide(f, t3);
  CHECK(qr.quotient == std::vector<double>{4, 10});
  CHECK(qr.remainder == std::vector<double>{1, 2, -2});
}

TEST_CASE("power-of-two scaling by additions") {
  PlainBackend be;
  CHECK(ps::mul_by_pow2_additively(be, 3.0, 2) == 12.0);
  CHECK(ps::mul_by_pow2_additively(be, 3.0, 0) == 3.0);
  CHECK_THROWS_AS(ps::mul_by_pow2_additively(be, 1.0, 25), GuardError);
  CHECK_THROWS_AS(ps::mul_by_pow2_additively(be, 1.0, -1), GuardError);
  for (long n = 1; n <= 200; ++n) CHECK(ps::mul_by_int_additively(be, 1.5, n) == 1.5 * static_cast<double>(n));

  Simulator sim(small_sim(8));
  SimBackend sb{sim};
  const auto ct = sim.encrypt_real(std::vector<double>(8, 0.5));
  sim.reset_counts();
  const auto out = ps::mul_by_pow2_additively(sb, ct, 10);
  CHECK(out.level() == ct.level());
  CHECK(sim.counts().multiplications() == 0);
  CHECK(sim.decrypt_real(out)[3] == 512.0);
}

}  // TEST_SUITE
