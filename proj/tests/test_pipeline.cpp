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
#include "osm/errors.hpp"
#include "osm/estimate.hpp"
#include "osm/generators.hpp"
#include "osm/io.hpp"
#include "osm/lp_engine.hpp"
#include "osm/oracles.hpp"
#include "osm/pipeline.hpp"
#include "reference.hpp"

using namespace osm;

namespace {

// Two disjoint heavy edges that always arrive.
Instance deterministic_matching() {
  Instance inst;
  inst.n = 2;
  inst.T = 2;
  inst.w = Matrix(2, 2);
  inst.w(0, 0) = 4.0;
  inst.w(1, 1) = 3.0;
  inst.p = {1.0, 1.0};
  inst.arrival = FixedOrder{{1, 0}};
  return inst;
}

}  // namespace

TEST_CASE("a deterministic matching goes straight to the baseline") {
  const Instance inst = deterministic_matching();
  const PipelineDecision d = plan(inst, practical_config());
  CHECK(d.branch == Branch::kBaselineDirect);
  CHECK(d.scale == doctest::Approx(7.0));
  CHECK(d.lb_x_star == doctest::Approx(1.0));
  CHECK_FALSE(d.decomposition);
  const Estimate e = estimate(*d.policy, inst, 1000, 1);
  CHECK(e.mean == doctest::Approx(7.0));
  CHECK(e.std_error == 0.0);
}

TEST_CASE("two-optima instances take the large-slackness branch") {
  int large = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Instance inst = gen_two_optima_instance(3, 1200 + s);
    const PipelineDecision d = plan(inst, practical_config());
    if (d.branch != Branch::kLargeSlack) continue;
    ++large;
    REQUIRE(d.large);
    REQUIRE(d.slackness);
    CHECK(d.slackness->slack_value >= d.config.eps_s);
    const double lb = threshold_profile(d.normalized, d.large->z).lb_total();
    CHECK((lb > d.lb_x_star || lb >= 0.5 + d.config.eps));
    CHECK(in_polytope(d.normalized, d.large->z));
  }
  CHECK(large >= 10);
}

TEST_CASE("the hard instance takes the small-slackness branch") {
  for (double p : {1e-4, 1e-3, 1e-2}) {
    const PipelineDecision d = plan(gen_hard_instance(p), practical_config());
    CHECK(d.branch == Branch::kSmallSlackMix);
    CHECK(d.lb_x_star < 0.5 + d.config.eps);
    REQUIRE(d.decomposition);
    REQUIRE(d.slackness);
    CHECK(d.slackness->slack_value < d.config.eps_s);
    CHECK_FALSE(d.log.empty());
  }
}

TEST_CASE("planning is deterministic") {
  const Instance inst = gen_near_tight(4, 1e-2, 3).instance;
  const PipelineDecision a = plan(inst, practical_config());
  const PipelineDecision b = plan(inst, practical_config());
  CHECK(a.branch == b.branch);
  CHECK(a.log == b.log);
  CHECK(a.x_star.x() == b.x_star.x());
  CHECK(estimate(*a.policy, inst, 2000, 6).mean == estimate(*b.policy, inst, 2000, 6).mean);
}

TEST_CASE("the plan ignores the arrival order") {
  std::mt19937_64 gen(31);
  for (int s = 0; s < 30; ++s) {
    RandomInstanceParams prm;
    prm.n = 2 + s % 3;
    prm.T = 3 + s % 5;
    prm.density = 0.6;
    prm.dist = static_cast<WeightDist>(s % 3);
    prm.seed = 60 + static_cast<std::uint64_t>(s);
    Instance a = gen_random_instance(prm);
    Instance b = a;
    std::vector<int> perm = identity_perm(a.T);
    std::shuffle(perm.begin(), perm.end(), gen);
    b.arrival = FixedOrder{perm};
    const PipelineDecision da = plan(a, practical_config());
    const PipelineDecision db = plan(b, practical_config());
    CHECK(da.branch == db.branch);
    CHECK(da.x_star.x() == db.x_star.x());
    CHECK(da.log == db.log);
    CHECK(serialize_instance(da.normalized) == serialize_instance(db.normalized));
  }
}

TEST_CASE("baseline branch on a single-order instance") {
  // Equal weights on one row: taking the first arrival is optimal, and so
  // is every proposal the baseline accepts.
  Instance inst;
  inst.n = 1;
  inst.T = 3;
  inst.w = Matrix(1, 3);
  inst.w(0, 0) = 1.0;
  inst.w(0, 1) = 1.0;
  inst.w(0, 2) = 1.0;
  inst.p = {0.3, 0.3, 0.3};
  inst.arrival = FixedOrder{{0, 1, 2}};
  const PipelineDecision d = plan(inst, practical_config());
  CHECK(d.branch == Branch::kBaselineDirect);
  const double opt = ref::online(inst, identity_perm(3));
  CHECK(opt == doctest::Approx(1.0 - 0.7 * 0.7 * 0.7));
  const Estimate e = estimate(*d.policy, inst, 100000, 8, Estimator::kConditional);
  CHECK(std::abs(e.mean - opt) <= 3.0 * e.std_error + 1e-12);
}

TEST_CASE("pipeline reaches half the online optimum") {
  const Instance insts[] = {gen_hard_instance(1e-2), gen_warmup_instance(3, 1e-3, 2).base,
                            gen_near_tight(3, 1e-2, 5).instance, gen_two_optima_instance(3, 1201)};
  for (const Instance& inst : insts) {
    const PipelineDecision d = plan(inst, practical_config());
    const double opt = online_optimum_stochastic(inst).value;
    const Estimate e = estimate(*d.policy, inst, 50000, 10, Estimator::kConditional);
    CHECK(e.mean >= 0.5 * opt - 3.0 * e.std_error);
    CHECK(e.mean <= offline_optimum(inst, OfflineMode::kExact).value + 3.0 * e.std_error + 1e-9);
  }
}

TEST_CASE("execute reports values in input units") {
  const Instance inst = deterministic_matching();
  const PipelineDecision d = plan(inst, practical_config());
  Rng rng(1);
  CHECK(execute(d, std::get<FixedOrder>(inst.arrival).perm, rng) == doctest::Approx(7.0));
}

TEST_CASE("theoretical constants") {
  const ConstantsBundle b = theoretical_constants();
  CHECK(b.theoretical.eps_o / b.theoretical.eps == doctest::Approx(256.0));
  CHECK(b.practical.eps_alg == doctest::Approx(std::cbrt(b.practical.eps_s)));
  CHECK_FALSE(b.theoretical_executable);
  // 150 (1e-27^{1/4} + 256e-27^{1/4}) = 150 * 5 * 1.778e-7.
  CHECK(b.slack_requirement == doctest::Approx(150.0 * 5.0 * std::pow(1e-27, 0.25)).epsilon(1e-9));
  CHECK(b.slack_requirement == doctest::Approx(1.3335e-4).epsilon(1e-3));
  CHECK_FALSE(b.slack_requirement_met);
}

TEST_CASE("invalid configuration is rejected by the planner") {
  AlgoConfig c = practical_config();
  c.eps_s = 1.5;
  CHECK_THROWS_AS(plan(deterministic_matching(), c), ParameterError);
}
