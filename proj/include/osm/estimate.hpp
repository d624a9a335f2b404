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

#ifndef OSM_ESTIMATE_HPP_
#define OSM_ESTIMATE_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "osm/instance.hpp"
#include "osm/policy.hpp"

namespace osm {

enum class Estimator {
  kRealized,     // matched weight of each trial
  kConditional,  // sum of p_t times the weight each decision would earn; same mean, lower variance
};

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(trials)
  std::int64_t trials = 0;
};

// Trial k runs on Rng::stream(seed, k). Stochastic arrival models draw the
// order first from that stream. Trials run in parallel and are reduced in
// index order, so the result equals estimate_serial bit for bit.
Estimate estimate(const Policy& policy, const Instance& instance, std::int64_t trials, std::uint64_t seed,
                  Estimator estimator = Estimator::kRealized);
Estimate estimate_serial(const Policy& policy, const Instance& instance, std::int64_t trials, std::uint64_t seed,
                         Estimator estimator = Estimator::kRealized);

// Per-trial values, in trial order.
std::vector<double> trial_values(const Policy& policy, const Instance& instance, std::int64_t trials,
                                 std::uint64_t seed, Estimator estimator = Estimator::kRealized);

// Same statistics for trials restricted to one fixed order.
Estimate estimate_order(const Policy& policy, const Instance& instance, std::span<const int> perm,
                        std::int64_t trials, std::uint64_t seed, Estimator estimator = Estimator::kRealized);

// Mean and standard error of a sample, reduced in index order.
Estimate summarize(const std::vector<double>& values);

// Order used by trial `rng` under the instance's arrival model.
std::span<const int> sample_order(const std::vector<WeightedOrder>& orders, Rng& rng);

}  // namespace osm

#endif  // OSM_ESTIMATE_HPP_
