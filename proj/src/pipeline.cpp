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

#include "osm/pipeline.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "osm/errors.hpp"

namespace osm {

std::string to_string(Branch branch) {
  switch (branch) {
    case Branch::kBaselineDirect:
      return "BaselineDirect";
    case Branch::kLargeSlack:
      return "LargeSlack";
    case Branch::kSmallSlackMix:
      return "SmallSlackMix";
  }
  return "unknown";
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

PipelineDecision plan(const Instance& instance, const AlgoConfig& config) {
  require_valid(instance);
  validate_config(config);
  PipelineDecision d;
  d.config = config;
  Instance blind = instance;
  blind.arrival = FixedOrder{identity_perm(instance.T)};

  ExAnteResult ex = solve_ex_ante(blind);
  if (!(ex.value > 0.0)) {
    d.branch = Branch::kBaselineDirect;
    d.normalized = blind;
    d.x_star = ex.solution;
    d.log.push_back("LP_ex-ante is 0; nothing to match");
    d.policy = std::make_shared<BaselinePolicy>(d.normalized, d.x_star);
    return d;
  }
  d.scale = ex.value;
  d.normalized = normalize(blind, ex.value);
  d.x_star = ex.solution;
  d.lb_x_star = threshold_profile(d.normalized, d.x_star).lb_total();
  d.log.push_back("LP_ex-ante = " + fmt(ex.value) + ", LB(x*) = " + fmt(d.lb_x_star) + " after normalization");

  if (d.lb_x_star >= 0.5 + config.eps) {
    d.branch = Branch::kBaselineDirect;
    d.log.push_back("LB(x*) >= 0.5 + eps: run Alg^b(x*)");
    d.policy = std::make_shared<BaselinePolicy>(d.normalized, d.x_star);
    return d;
  }

  d.decomposition = decompose(d.normalized, d.x_star, config.eps, 2.0);
  for (const auto& w : d.decomposition->warnings) d.log.push_back("decomposition: " + w);
  d.slackness = solve_slackness(d.normalized, *d.decomposition, config.eps_o);
  const bool optimal = d.slackness->status == SlackStatus::kOptimal;
  if (optimal) {
    d.log.push_back("LP_slack = " + fmt(d.slackness->slack_value));
  } else {
    d.log.push_back("LP_slack infeasible: no solution reaches 1 - eps_o");
  }

  if (optimal && d.slackness->slack_value >= config.eps_s) {
    d.branch = Branch::kLargeSlack;
    d.large = construct_large_slackness_solution(d.normalized, *d.decomposition, *d.slackness, config);
    for (const auto& w : d.large->warnings) d.log.push_back("large slack: " + w);
    const bool above_bar = d.large->lb >= 0.5 + config.eps;
    const bool improves = d.large->lb > d.lb_x_star;
    d.log.push_back("z from " + d.large->chosen + ", LB(z) = " + fmt(d.large->lb) +
                    (above_bar ? " >= 0.5 + eps" : " < 0.5 + eps") +
                    (improves ? ", improves on LB(x*)" : ", does not improve on LB(x*)"));
    d.policy = std::make_shared<BaselinePolicy>(d.normalized, d.large->z);
    return d;
  }

  d.branch = Branch::kSmallSlackMix;
  auto small = std::make_shared<SmallSlackPolicy>(d.normalized, *d.decomposition, config);
  auto base = std::make_shared<BaselinePolicy>(d.normalized, d.x_star);
  d.delta_alg = compute_delta_alg(config, &d.log);
  d.log.push_back("mixing probability delta_alg = " + fmt(d.delta_alg));
  d.policy = std::make_shared<MixturePolicy>(d.delta_alg, std::move(small), std::move(base));
  return d;
}

double execute(const PipelineDecision& decision, std::span<const int> perm, Rng& rng) {
  if (!decision.policy) throw PreconditionError("execute: decision has no policy");
  return decision.scale * run_trial(*decision.policy, decision.normalized, perm, rng).realized;
}

ConstantsBundle theoretical_constants() {
  ConstantsBundle b;
  b.theoretical.eps = 1e-27;
  b.theoretical.eps_o = 256e-27;
  b.theoretical.eps_s = 1e-6;
  b.theoretical.eps_alg = std::cbrt(b.theoretical.eps_s);
  b.practical = practical_config();
  b.theoretical_executable = false;
  b.slack_requirement = 150.0 * (std::pow(b.theoretical.eps, 0.25) + std::pow(b.theoretical.eps_o, 0.25));
  b.slack_requirement_met = b.theoretical.eps_s >= b.slack_requirement;
  return b;
}

}  // namespace osm
