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

#ifndef OSM_GENERATORS_HPP_
#define OSM_GENERATORS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "osm/frac_solution.hpp"
#include "osm/instance.hpp"

namespace osm {

// Three offline vertices; online F1, F2, F3 (indices 0-2, free) and D12,
// D13, D23 (indices 3-5, deterministic); two equally likely orders.
Instance gen_hard_instance(double p_free);

struct WarmupInstance {
  Instance base;
  std::vector<int> free_set;
  std::vector<int> det_set;
  double p_free = 0.0;
  std::vector<int> unique_map;   // per online vertex: neighbour if free, else -1
  std::vector<int> det_partner;  // i* per offline vertex (M*), -1 if unmatched
  std::vector<double> w_i;       // weight of (i, i*)
  std::vector<double> v;         // per online vertex: w_t * p_t

  std::vector<int> free_of(int i) const;
};

WarmupInstance gen_warmup_instance(int n, double p_free, std::uint64_t seed);

// Violated warm-up assumptions, empty if all hold.
std::vector<std::string> check_warmup(const WarmupInstance& warmup);

// Rebuilds the warm-up structure from a bare instance. Throws
// PreconditionError if the instance is not of warm-up form.
WarmupInstance infer_warmup(const Instance& instance);

enum class WeightDist { kUniform, kLognormal, kProphetHard };

WeightDist parse_weight_dist(const std::string& name);
std::string to_string(WeightDist dist);

struct RandomInstanceParams {
  int n = 4;
  int T = 8;
  double density = 0.5;
  WeightDist dist = WeightDist::kUniform;
  std::uint64_t seed = 1;
  double hard_p = 0.05;
};

Instance gen_random_instance(const RandomInstanceParams& params);

// Instance with a feasible solution attached.
struct InstanceWithSolution {
  Instance instance;
  FracSolution a;
};

// Rows made of hard pairs on disjoint columns: one deterministic column and
// a few low-probability high-weight columns per row, balanced so that
// LB(a) <= (0.5 + gamma) LP(a). Occasionally adds a light deterministic-only
// row that the decomposition prunes.
InstanceWithSolution gen_near_tight(int rows, double gamma, std::uint64_t seed);

// A single hard-pair-like row with wider perturbations, used to sample the
// premise of the single-row free-probability bounds.
InstanceWithSolution gen_lemma41_row(std::uint64_t seed);

// Cycle of shared low-probability vertices between consecutive rows, plus a
// deterministic vertex per row. The ex-ante optimum gives every shared
// vertex to one row, and rotating all of them is a near-optimal alternative.
Instance gen_two_optima_instance(int n, std::uint64_t seed);

}  // namespace osm

#endif  // OSM_GENERATORS_HPP_
