// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "osm/decomposition.hpp"
#include "osm/generators.hpp"
#include "osm/lp_engine.hpp"
#include "osm/simplex.hpp"
#include "reference.hpp"

using namespace osm;

namespace {

Instance make(int n, int T, std::vector<double> w, std::vector<double> p) {
  Instance inst;
  inst.n = n;
  inst.T = T;
  inst.w = Matrix(n, T);
  for (int i = 0; i < n; ++i) {
    for (int t = 0; t < T; ++t) inst.w(i, t) = w[static_cast<std::size_t>(i * T + t)];
  }
  inst.p = std::move(p);
  inst.arrival = FixedOrder{identity_perm(T)};
  return inst;
}

Instance random_instance(int s) {
  RandomInstanceParams p;
  p.n = 1 + s % 6;
  p.T = 1 + (s / 6) % 9;
  p.density = (s % 3 + 1) / 3.0;
  p.dist = static_cast<WeightDist>(s % 3);
  p.seed = 3000 + static_cast<std::uint64_t>(s);
  return gen_random_instance(p);
}

// Random point of P: random entries, then rows and columns scaled down.
FracSolution random_feasible(const Instance& inst, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix x(inst.n, inst.T);
  for (int i = 0; i < inst.n; ++i) {
    for (int t = 0; t < inst.T; ++t) x(i, t) = inst.w(i, t) > 0.0 ? u(gen) : 0.0;
  }
  for (int t = 0; t < inst.T; ++t) {
    double q = 0.0;
    for (int i = 0; i < inst.n; ++i) q += x(i, t);
    if (q > 0.0) {
      for (int i = 0; i < inst.n; ++i) x(i, t) *= inst.p[static_cast<std::size_t>(t)] / q * u(gen);
    }
  }
  for (int i = 0; i < inst.n; ++i) {
    double q = 0.0;
    for (int t = 0; t < inst.T; ++t) q += x(i, t);
    if (q > 1.0) {
      for (int t = 0; t < inst.T; ++t) x(i, t) /= q;
    }
  }
  return FracSolution(x);
}

}  // namespace

TEST_CASE("ex-ante LP on one row with a rare heavy vertex") {
  const Instance inst = make(1, 2, {1.0, 10.0}, {1.0, 0.1});
  const ExAnteResult r = solve_ex_ante(inst);
  CHECK(r.value == doctest::Approx(1.9).epsilon(1e-12));
  CHECK(r.solution(0, 0) == doctest::Approx(0.9));
  CHECK(r.solution(0, 1) == doctest::Approx(0.1));
}

TEST_CASE("ex-ante LP with zero weights") {
  const Instance inst = make(2, 2, {0, 0, 0, 0}, {1.0, 0.5});
  const ExAnteResult r = solve_ex_ante(inst);
  CHECK(r.value == 0.0);
  CHECK(in_polytope(inst, r.solution));
}

TEST_CASE("ex-ante LP on the hard instance") {
  const double p = 1e-4;
  const ExAnteResult r = solve_ex_ante(gen_hard_instance(p));
  // Each offline vertex takes its free vertex (mass p, weight 1/p) and 1 - p
  // of a deterministic vertex.
  CHECK(r.value == doctest::Approx(6.0 - 3.0 * p).epsilon(1e-12));
  CHECK(r.value == doctest::Approx(6.0).epsilon(1e-3));
}

TEST_CASE("ex-ante LP matches the transportation reference") {
  for (int s = 0; s < 150; ++s) {
    const Instance inst = random_instance(s);
    const ExAnteResult r = solve_ex_ante(inst);
    const double expect = ref::transport_value(inst);
    CHECK(r.value == doctest::Approx(expect).epsilon(1e-8));
    CHECK(in_polytope(inst, r.solution));
    CHECK(r.dual_value == doctest::Approx(r.value).epsilon(1e-7));
    CHECK(lp_value(inst, r.solution) == doctest::Approx(r.value).epsilon(1e-8));
  }
}

TEST_CASE("ex-ante LP keeps light edges next to very heavy ones") {
  // Relative reduced-cost tests would drop the 1e-5 edge.
  const Instance inst = make(2, 3, {2e5, 1.0, 0.0, 0.0, 0.0, 1e-5}, {1e-6, 1.0, 1.0});
  const ExAnteResult r = solve_ex_ante(inst);
  CHECK(r.solution(1, 2) == doctest::Approx(1.0));
  CHECK(r.value == doctest::Approx(ref::transport_value(inst)).epsilon(1e-12));
}

TEST_CASE("ex-ante LP dominates random feasible points") {
  std::mt19937_64 gen(12);
  for (int s = 0; s < 20; ++s) {
    const Instance inst = random_instance(s * 7 + 3);
    const double best = solve_ex_ante(inst).value;
    for (int k = 0; k < 50; ++k) {
      const FracSolution x = random_feasible(inst, gen);
      REQUIRE(in_polytope(inst, x));
      CHECK(lp_value(inst, x) <= best + 1e-9);
    }
  }
}

TEST_CASE("simplex reports infeasible and unbounded programs") {
  LinearProgram lp;
  lp.num_vars = 1;
  lp.objective = {1.0};
  lp.add_row({1.0}, Sense::kLessEq, 1.0);
  lp.add_row({1.0}, Sense::kGreaterEq, 2.0);
  CHECK(solve_lp(lp).status == LpStatus::kInfeasible);

  LinearProgram up;
  up.num_vars = 2;
  up.objective = {1.0, 1.0};
  up.add_row({1.0, -1.0}, Sense::kLessEq, 1.0);
  CHECK(solve_lp(up).status == LpStatus::kUnbounded);

  LinearProgram eq;
  eq.num_vars = 2;
  eq.objective = {1.0, 2.0};
  eq.add_row({1.0, 1.0}, Sense::kEqual, 1.0);
  const LpResult r = solve_lp(eq);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(2.0));
  CHECK(r.duals[0] == doctest::Approx(2.0));
}

TEST_CASE("lp_value arithmetic") {
  const Instance inst = make(1, 2, {1.0, 2.0}, {1.0, 1.0});
  Matrix x(1, 2);
  CHECK(lp_value(inst, FracSolution(x)) == 0.0);
  x(0, 0) = 0.5;
  x(0, 1) = 0.25;
  CHECK(lp_value_i(inst, FracSolution(x), 0) == 1.0);
}

TEST_CASE("LB of a single edge") {
  const double w[] = {1.0};
  const double x[] = {0.7};
  const RowThreshold r = row_threshold(w, x);
  CHECK(r.lb == doctest::Approx(0.7));
  CHECK(r.tau == 0.0);
}

TEST_CASE("LB of the hard pair is half of LP") {
  const double eps = 0.01;
  const double w[] = {1.0, 1.0 / eps};
  const double x[] = {1.0, eps};
  CHECK(row_threshold_value(w, x, 0.0) == doctest::Approx(1.0));
  CHECK(row_threshold_value(w, x, 1.0 / eps) == doctest::Approx(1.0));
  CHECK(row_threshold(w, x).lb == doctest::Approx(1.0));
  CHECK(ref::lb_row(w, x) == doctest::Approx(1.0));
}

TEST_CASE("LB with two thresholds tied at 1") {
  const double w[] = {1.0, 2.0};
  const double x[] = {0.5, 0.5};
  CHECK(row_threshold_value(w, x, 0.0) == doctest::Approx(1.0));
  CHECK(row_threshold_value(w, x, 2.0) == doctest::Approx(1.0));
  const RowThreshold r = row_threshold(w, x);
  CHECK(r.lb == doctest::Approx(1.0));
  CHECK(r.tau == 0.0);  // smallest maximizer
}

TEST_CASE("equal weights never block each other") {
  const double w[] = {3.0, 3.0};
  const double x[] = {0.5, 0.5};
  CHECK(row_threshold(w, x).lb == doctest::Approx(3.0));
}

TEST_CASE("threshold profile agrees with the definition and brackets LP_i") {
  std::mt19937_64 gen(5);
  for (int s = 0; s < 300; ++s) {
    const Instance inst = random_instance(s);
    const FracSolution x = s % 2 ? solve_ex_ante(inst).solution : random_feasible(inst, gen);
    const ThresholdProfile prof = threshold_profile(inst, x);
    for (int i = 0; i < inst.n; ++i) {
      std::vector<double> w(static_cast<std::size_t>(inst.T)), xr(static_cast<std::size_t>(inst.T));
      for (int t = 0; t < inst.T; ++t) {
        w[static_cast<std::size_t>(t)] = inst.w(i, t);
        xr[static_cast<std::size_t>(t)] = x(i, t);
      }
      const auto iu = static_cast<std::size_t>(i);
      CHECK(prof.lb[iu] == doctest::Approx(ref::lb_row(w, xr)).epsilon(1e-12));
      CHECK(prof.lb[iu] >= 0.5 * prof.lp[iu] - 1e-12);
      CHECK(prof.lb[iu] <= prof.lp[iu] + 1e-12);
      CHECK(row_threshold_value(w, xr, prof.tau[iu]) == doctest::Approx(prof.lb[iu]).epsilon(1e-12));
    }
  }
}

TEST_CASE("slackness LP with an empty large part is zero") {
  const Instance inst = normalize(make(1, 2, {1.0, 1.0}, {0.5, 0.5}), 1.0);
  const FracSolution zero = FracSolution::zeros(1, 2);
  const SlacknessResult r = solve_slackness(inst, zero, EdgeMask(1, 2), 0.05);
  REQUIRE(r.status == SlackStatus::kOptimal);
  CHECK(r.slack_value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(lp_value(inst, r.y_o) >= 0.95 - 1e-8);
}

TEST_CASE("slackness LP on a single large edge") {
  // Objective (1 - y) + y (1 - 1) with y >= 1 - eps_o: optimum y = 1 - eps_o.
  const Instance inst = make(1, 1, {1.0}, {1.0});
  Matrix xl(1, 1);
  xl(0, 0) = 1.0;
  EdgeMask large(1, 1);
  large.set(0, 0);
  const SlacknessResult r = solve_slackness(inst, FracSolution(xl), large, 0.05);
  REQUIRE(r.status == SlackStatus::kOptimal);
  CHECK(r.slack_value == doctest::Approx(0.05).epsilon(1e-9));
  CHECK(r.y_o(0, 0) == doctest::Approx(0.95).epsilon(1e-9));
  CHECK(r.opt_constraint_rhs == doctest::Approx(0.95));
  const SlacknessResult free = solve_slackness(inst, FracSolution(xl), large, 1.0);
  CHECK(free.slack_value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("slackness LP reports infeasibility") {
  const Instance inst = make(1, 1, {0.5}, {1.0});
  const SlacknessResult r = solve_slackness(inst, FracSolution::zeros(1, 1), EdgeMask(1, 1), 0.05);
  CHECK(r.status == SlackStatus::kInfeasible);
}

TEST_CASE("slackness solutions are near-optimal members of P") {
  for (int s = 0; s < 40; ++s) {
    const InstanceWithSolution g = gen_near_tight(2 + s % 4, 1e-2, 40 + static_cast<std::uint64_t>(s));
    const ExAnteResult ex = solve_ex_ante(g.instance);
    const Instance inst = normalize(g.instance, ex.value);
    const Decomposition d = decompose(inst, ex.solution, 1e-2, 2.0);
    const SlacknessResult r = solve_slackness(inst, d, 0.05);
    REQUIRE(r.status == SlackStatus::kOptimal);
    CHECK(in_polytope(inst, r.y_o));
    CHECK(lp_value(inst, r.y_o) >= 0.95 - 1e-8);
    CHECK(r.dual_value == doctest::Approx(r.slack_value).epsilon(1e-7));
    CHECK(slackness_objective(inst, d.x_tilde_L, d.large_edges, r.y_o) ==
          doctest::Approx(r.slack_value).epsilon(1e-9));
  }
}

TEST_CASE("submodular LP value by hand") {
  const double r[] = {0.0, 0.9};
  const double xl[] = {0.2, 0.0};
  const char large[] = {1, 0};
  const double hw[] = {4.0, 1.0};
  // z = (0.2, 0.8): 0.8 + 0.8 - 0.8.
  CHECK(submod_value(1.0, r, xl, large, hw) == doctest::Approx(0.8));
  const double r0[] = {0.0, 0.0};
  CHECK(submod_value(1.0, r0, xl, large, hw) == doctest::Approx(0.0));
}

TEST_CASE("submodular LP value is monotone, nonnegative and has diminishing marginals") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int s = 0; s < 500; ++s) {
    const int n = 2 + s % 4;
    const auto nu = static_cast<std::size_t>(n);
    const double p = 0.1 + 0.9 * u(gen);
    std::vector<double> r(nu), r2(nu), xl(nu, 0.0), hw(nu);
    std::vector<char> large(nu, 0);
    for (std::size_t i = 0; i < nu; ++i) {
      large[i] = i == 0 ? 1 : (u(gen) < 0.3);
      hw[i] = 3.0 * u(gen);
      if (large[i]) xl[i] = p * u(gen) / static_cast<double>(n);
      r[i] = large[i] ? 0.0 : 0.5 * u(gen);
      r2[i] = large[i] ? 0.0 : r[i] + 0.5 * u(gen);
    }
    const double base = submod_value(p, r, xl, large, hw);
    CHECK(base >= -1e-12);
    CHECK(submod_value(p, r2, xl, large, hw) >= base - 1e-12);
    const std::size_t j = nu - 1;
    if (large[j]) continue;
    const double d = 0.3 * u(gen);
    auto bumped = [&](std::vector<double> v) {
      v[j] += d;
      return v;
    };
    const double m1 = submod_value(p, bumped(r), xl, large, hw) - base;
    const double m2 = submod_value(p, bumped(r2), xl, large, hw) - submod_value(p, r2, xl, large, hw);
    CHECK(m1 >= m2 - 1e-9);
  }
}
