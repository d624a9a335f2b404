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

#ifndef OSM_PIPELINE_HPP_
#define OSM_PIPELINE_HPP_

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "osm/algorithms.hpp"
#include "osm/decomposition.hpp"
#include "osm/instance.hpp"
#include "osm/lp_engine.hpp"
#include "osm/policy.hpp"

namespace osm {

enum class Branch { kBaselineDirect, kLargeSlack, kSmallSlackMix };
std::string to_string(Branch branch);

struct PipelineDecision {
  Branch branch = Branch::kBaselineDirect;
  AlgoConfig config;
  Instance normalized;     // weights divided by scale; arrival model dropped
  double scale = 1.0;      // LP_ex-ante of the input instance
  FracSolution x_star;
  double lb_x_star = 0.0;  // LB(x*) on the normalized instance
  std::optional<Decomposition> decomposition;
  std::optional<SlacknessResult> slackness;
  std::optional<LargeSlackResult> large;
  double delta_alg = 0.0;
  std::vector<std::string> log;
  std::shared_ptr<const Policy> policy;  // acts on offline indices; valid for the input instance
};

// Normalizes, then picks a branch: Alg^b(x*) when LB(x*) >= 0.5 + eps;
// otherwise decomposes x* (gamma = eps, alpha = 2) and solves the slackness
// LP. Large slack runs Alg^b(z) on the constructed z, small slack mixes the
// small-slackness algorithm with Alg^b(x*). The arrival model of the input
// is never read.
PipelineDecision plan(const Instance& instance, const AlgoConfig& config);

// One trial along `perm`; the value is in the units of the input instance.
double execute(const PipelineDecision& decision, std::span<const int> perm, Rng& rng);

struct ConstantsBundle {
  AlgoConfig theoretical;  // eps = 1e-27, eps_o = 256e-27, eps_s = 1e-6
  AlgoConfig practical;
  bool theoretical_executable = false;  // below double resolution around 0.5
  double slack_requirement = 0.0;       // 150 (eps^{1/4} + eps_o^{1/4}) for the theoretical set
  bool slack_requirement_met = false;   // eps_s >= slack_requirement
};

ConstantsBundle theoretical_constants();

}  // namespace osm

#endif  // OSM_PIPELINE_HPP_
