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

#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "doctest.h"
#include "osm/algorithms.hpp"
#include "osm/errors.hpp"
#include "osm/estimate.hpp"
#include "osm/generators.hpp"
#include "osm/lp_engine.hpp"
#include "osm/oracles.hpp"
#include "osm/pipeline.hpp"
#include "reference.hpp"

using namespace osm;

namespace {

Instance tiny_random(int s) {
  RandomInstanceParams p;
  p.n = 1 + s % 4;
  p.T = 1 + (s / 4) % 7;
  p.density = (s % 3 + 1) / 3.0;
  p.dist = static_cast<WeightDist>(s % 3);
  p.seed = 3100 + static_cast<std::uint64_t>(s);
  return gen_random_instance(p);
}

bool near(const Estimate& e, double exact) { return std::abs(e.mean - exact) <= 3.0 * e.std_error + 1e-9 * std::max(1.0, exact); }

// Pipeline state for an instance routed to the small-slackness mixture.
PipelineDecision small_slack_plan(const Instance& inst) {
  PipelineDecision d = plan(inst, practical_config());
  REQUIRE(d.branch == Branch::kSmallSlackMix);
  return d;
}

}  // namespace

TEST_CASE("baseline on a single edge") {
  Instance inst;
  inst.n = 1;
  inst.T = 1;
  inst.w = Matrix(1, 1);
  inst.w(0, 0) = 2.0;
  inst.p = {0.25};
  inst.arrival = FixedOrder{{0}};
  const FracSolution x = solve_ex_ante(inst).solution;
  CHECK(baseline_value(inst, x) == doctest::Approx(0.5));
  BaselinePolicy pol(inst, x);
  CHECK(near(estimate(pol, inst, 50000, 3), 0.5));
  CHECK(estimate(pol, inst, 1000, 3, Estimator::kConditional).mean == doctest::Approx(0.5));
}

TEST_CASE("exact baseline value agrees with enumeration and simulation") {
  std::mt19937_64 gen(12);
  for (int s = 0; s < 80; ++s) {
    const Instance inst = tiny_random(s);
    const FracSolution x = solve_ex_ante(inst).solution;
    BaselinePolicy pol(inst, x);
    std::vector<int> perm = identity_perm(inst.T);
    std::shuffle(perm.begin(), perm.end(), gen);
    const double exact = baseline_value(inst, x, perm);
    CHECK(exact == doctest::Approx(ref::baseline(inst, x.x(), pol.thresholds(), perm)).epsilon(1e-10));
    CHECK(exact >= 0.5 * solve_ex_ante(inst).value - 1e-9);
    if (s % 8 == 0) CHECK(near(estimate_order(pol, inst, perm, 40000, 5 + static_cast<std::uint64_t>(s)), exact));
  }
}

TEST_CASE("baseline thresholds maximize the row lower bound") {
  for (int s = 0; s < 40; ++s) {
    const Instance inst = tiny_random(s);
    const FracSolution x = solve_ex_ante(inst).solution;
    BaselinePolicy pol(inst, x);
    for (int i = 0; i < inst.n; ++i) {
      std::vector<double> w(static_cast<std::size_t>(inst.T));
      std::vector<double> xs(w.size());
      for (int t = 0; t < inst.T; ++t) {
        w[static_cast<std::size_t>(t)] = inst.w(i, t);
        xs[static_cast<std::size_t>(t)] = x(i, t);
      }
      CHECK(row_threshold_value(w, xs, pol.thresholds()[static_cast<std::size_t>(i)]) ==
            doctest::Approx(ref::lb_row(w, xs)).epsilon(1e-10));
    }
  }
}

TEST_CASE("warm-up with one offline vertex is near optimal") {
  const WarmupInstance wu = gen_warmup_instance(1, 1e-4, 5);
  WarmupPolicy pol(wu);
  const std::vector<int> perm = std::get<FixedOrder>(wu.base.arrival).perm;
  const double opt = ref::online(wu.base, perm);
  const Estimate e = estimate(pol, wu.base, 100000, 2, Estimator::kConditional);
  CHECK(e.mean <= opt + 3.0 * e.std_error + 1e-12);
  CHECK(e.mean >= 0.99 * opt);
}

TEST_CASE("warm-up rejects instances that break its assumptions") {
  WarmupInstance wu = gen_warmup_instance(3, 1e-4, 7);
  wu.base.w(wu.unique_map[static_cast<std::size_t>(wu.free_set[0])], wu.free_set[0]) *= 2.0;
  CHECK_THROWS_AS(WarmupPolicy{wu}, PreconditionError);
}

TEST_CASE("with no large edges every row switches at the first arrival") {
  const PipelineDecision d = small_slack_plan(gen_hard_instance(1e-2));
  Decomposition dec = *d.decomposition;
  dec.large_edges = EdgeMask(d.normalized.n, d.normalized.T);
  dec.x_tilde_L = FracSolution::zeros(d.normalized.n, d.normalized.T);
  const std::vector<int> perm = {5, 4, 3, 2, 1, 0};
  const SmallSlackTrace tr = small_slack_trace(d.normalized, dec, d.config, perm);
  for (int i = 0; i < d.normalized.n; ++i) CHECK(tr.switch_vertex[static_cast<std::size_t>(i)] == 5);
  REQUIRE(tr.transitions[0].size() == static_cast<std::size_t>(d.normalized.n));
}

TEST_CASE("small-slackness engine keeps its invariants along every order") {
  for (double p : {1e-4, 1e-3, 1e-2}) {
    const PipelineDecision d = small_slack_plan(gen_hard_instance(p));
    std::vector<int> perm = identity_perm(d.normalized.T);
    do {
      SmallSlackEngine eng(d.normalized, *d.decomposition, d.config);
      eng.check_invariants();
      for (int t : perm) {
        std::vector<Transfer> transfers;
        eng.advance(t, nullptr, &transfers);
        CHECK_NOTHROW(eng.check_invariants());
        for (const Transfer& tr : transfers) {
          CHECK(tr.delta >= 0.0);
          CHECK(tr.s != t);
        }
      }
      for (int t = 0; t < d.normalized.T; ++t) {
        double col = eng.dummy(t);
        for (int i = 0; i < d.normalized.n; ++i) col += eng.x(i, t);
        CHECK(col == doctest::Approx(d.normalized.p[static_cast<std::size_t>(t)]).epsilon(1e-9));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST_CASE("reallocation only moves mass onto vertices yet to arrive") {
  const PipelineDecision d = small_slack_plan(gen_hard_instance(1e-3));
  const auto orders = arrival_orders(gen_hard_instance(1e-3).arrival);
  for (const WeightedOrder& o : orders) {
    const SmallSlackTrace tr = small_slack_trace(d.normalized, *d.decomposition, d.config, o.perm);
    for (std::size_t k = 0; k < tr.transfers.size(); ++k) {
      for (const Transfer& x : tr.transfers[k]) {
        CHECK(tr.position[static_cast<std::size_t>(x.s)] > static_cast<int>(k));
      }
    }
  }
}

TEST_CASE("small-slackness acceptance keeps stage-2 matches at half the fractional mass") {
  const Instance raw = gen_hard_instance(1e-2);
  const PipelineDecision d = small_slack_plan(raw);
  const std::vector<int> perm = arrival_orders(raw.arrival)[0].perm;
  const SmallSlackTrace tr = small_slack_trace(d.normalized, *d.decomposition, d.config, perm);
  const int trials = 200000;
  const int n = d.normalized.n;
  const int T = d.normalized.T;
  std::vector<double> free_after(static_cast<std::size_t>(n), 0.0);
  Matrix hits(n, T);
  double max_acc = 0.0;
  for (int k = 0; k < trials; ++k) {
    Rng rng = Rng::stream(77, static_cast<std::uint64_t>(k));
    const SmallSlackOutcome out = run_small_slackness(d.normalized, *d.decomposition, d.config, perm, rng);
    max_acc = std::max(max_acc, out.max_accept_prob);
    for (int i = 0; i < n; ++i) {
      const int ti = tr.switch_vertex[static_cast<std::size_t>(i)];
      if (ti < 0) continue;
      const int m = out.match_time[static_cast<std::size_t>(i)];
      if (m >= 0 && tr.position[static_cast<std::size_t>(m)] <= tr.position[static_cast<std::size_t>(ti)]) continue;
      free_after[static_cast<std::size_t>(i)] += 1.0;
      if (m >= 0) hits(i, m) += 1.0;
    }
  }
  CHECK(max_acc <= 1.0 + 1e-12);
  int checked = 0;
  for (int i = 0; i < n; ++i) {
    const double base = free_after[static_cast<std::size_t>(i)];
    if (base < 1000.0) continue;
    for (int t = 0; t < T; ++t) {
      if (!tr.in_e2(i, t)) continue;
      const double q = tr.x_at_arrival(i, t) / 2.0;
      const double f = hits(i, t) / base;
      CHECK(std::abs(f - q) <= 3.0 * std::sqrt(q * (1.0 - q) / base) + 1e-12);
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("small-slackness runs are deterministic per seed") {
  const PipelineDecision d = small_slack_plan(gen_hard_instance(1e-3));
  SmallSlackPolicy pol(d.normalized, *d.decomposition, d.config);
  const Instance inst = [&] {
    Instance x = d.normalized;
    x.arrival = gen_hard_instance(1e-3).arrival;
    return x;
  }();
  const Estimate a = estimate(pol, inst, 5000, 9);
  const Estimate b = estimate(pol, inst, 5000, 9);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
}

TEST_CASE("mixture at the endpoints replays its components") {
  const Instance raw = gen_hard_instance(1e-3);
  const PipelineDecision d = small_slack_plan(raw);
  Instance inst = d.normalized;
  inst.arrival = raw.arrival;
  auto small = std::make_shared<SmallSlackPolicy>(d.normalized, *d.decomposition, d.config);
  auto base = std::make_shared<BaselinePolicy>(d.normalized, d.x_star);
  const MixturePolicy m0(0.0, small, base);
  const MixturePolicy m1(1.0, small, base);
  CHECK(estimate(m0, inst, 3000, 4).mean == estimate(*base, inst, 3000, 4).mean);
  CHECK(estimate(m1, inst, 3000, 4).mean == estimate(*small, inst, 3000, 4).mean);
  const MixturePolicy half(0.5, small, base);
  const double mid = estimate(half, inst, 20000, 4, Estimator::kConditional).mean;
  const double lo = std::min(estimate(*base, inst, 20000, 5, Estimator::kConditional).mean,
                             estimate(*small, inst, 20000, 5, Estimator::kConditional).mean);
  CHECK(mid >= lo - 0.05);
}

TEST_CASE("mixing probability is clamped when the constant is negative") {
  std::vector<std::string> warnings;
  CHECK(compute_delta_alg(practical_config(), &warnings) == 0.0);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("clamped") != std::string::npos);

  AlgoConfig c;
  c.eps = 1e-12;
  c.eps_o = 1e-3;
  c.eps_s = 1e-6;
  c.eps_alg = 1e-2;
  const double cc = mixing_c(c);
  REQUIRE(cc > 0.0);
  CHECK(compute_delta_alg(c) == doctest::Approx(1e-3 / (1.0 + 2.0 * cc * (1.0 - 1e-3))));
  c.delta_alg = 0.3;
  CHECK(compute_delta_alg(c) == 0.3);
}

TEST_CASE("large-slackness candidates stay in the polytope and beat x*") {
  int routed = 0;
  for (std::uint64_t s = 0; s < 40; ++s) {
    const PipelineDecision d = plan(gen_two_optima_instance(2 + static_cast<int>(s % 4), 50 + s), practical_config());
    if (d.branch != Branch::kLargeSlack) continue;
    ++routed;
    for (const Candidate& c : d.large->candidates) {
      if (c.feasible) CHECK(in_polytope(d.normalized, c.z));
    }
    const double lb = threshold_profile(d.normalized, d.large->z).lb_total();
    CHECK(lb == doctest::Approx(d.large->lb));
    CHECK(lb > d.lb_x_star);
  }
  CHECK(routed >= 10);
}

TEST_CASE("large-slackness construction needs enough slack") {
  const PipelineDecision d = plan(gen_hard_instance(1e-3), practical_config());
  REQUIRE(d.decomposition);
  SlacknessResult weak;
  weak.status = SlackStatus::kOptimal;
  weak.y_o = FracSolution::zeros(d.normalized.n, d.normalized.T);
  weak.slack_value = 0.5 * d.config.eps_s;
  CHECK_THROWS_AS(construct_large_slackness_solution(d.normalized, *d.decomposition, weak, d.config), ParameterError);
  weak.status = SlackStatus::kInfeasible;
  weak.slack_value = 1.0;
  CHECK_THROWS_AS(construct_large_slackness_solution(d.normalized, *d.decomposition, weak, d.config), ParameterError);
}

TEST_CASE("configuration is validated") {
  AlgoConfig c = practical_config();
  CHECK(c.eps_alg == doctest::Approx(std::cbrt(c.eps_s)));
  CHECK_NOTHROW(validate_config(c));
  c.eps = 0.0;
  CHECK_THROWS_AS(validate_config(c), ParameterError);
  c = practical_config();
  c.delta_alg = 1.5;
  CHECK_THROWS_AS(validate_config(c), ParameterError);
  c = practical_config();
  c.partition_samples = 0;
  CHECK_THROWS_AS(validate_config(c), ParameterError);
}
