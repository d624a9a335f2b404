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

#include "osm/estimate.hpp"

#include <cmath>

#include "osm/errors.hpp"
#include "osm/parallel.hpp"

namespace osm {

std::span<const int> sample_order(const std::vector<WeightedOrder>& orders, Rng& rng) {
  if (orders.size() == 1) return orders.front().perm;
  const double u = rng.uniform();
  double acc = 0.0;
  for (const WeightedOrder& o : orders) {
    acc += o.prob;
    if (u < acc) return o.perm;
  }
  return orders.back().perm;
}

Estimate summarize(const std::vector<double>& values) {
  Estimate e;
  e.trials = static_cast<std::int64_t>(values.size());
  if (values.empty()) return e;
  double sum = 0.0;
  for (double v : values) sum += v;
  e.mean = sum / static_cast<double>(values.size());
  if (values.size() < 2) return e;
  double ss = 0.0;
  for (double v : values) ss += (v - e.mean) * (v - e.mean);
  const double var = ss / static_cast<double>(values.size() - 1);
  e.std_error = std::sqrt(var / static_cast<double>(values.size()));
  return e;
}

namespace {

double one_trial(const Policy& policy, const Instance& instance, const std::vector<WeightedOrder>& orders,
                 std::span<const int> fixed, std::uint64_t seed, std::int64_t k, Estimator estimator) {
  Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(k));
  const std::span<const int> perm = fixed.empty() ? sample_order(orders, rng) : fixed;
  const TrialOutcome o = run_trial(policy, instance, perm, rng);
  return estimator == Estimator::kRealized ? o.realized : o.conditional;
}

std::vector<double> run_all(const Policy& policy, const Instance& instance, std::span<const int> fixed,
                            std::int64_t trials, std::uint64_t seed, Estimator estimator, bool parallel) {
  if (trials < 1) throw ParameterError("trials must be at least 1");
  const std::vector<WeightedOrder> orders = arrival_orders(instance.arrival);
  std::vector<double> values(static_cast<std::size_t>(trials));
  if (parallel) {
    const int threads = worker_threads();
#pragma omp parallel for schedule(dynamic, 256) num_threads(threads)
    for (std::int64_t k = 0; k < trials; ++k) {
      values[static_cast<std::size_t>(k)] = one_trial(policy, instance, orders, fixed, seed, k, estimator);
    }
  } else {
    for (std::int64_t k = 0; k < trials; ++k) {
      values[static_cast<std::size_t>(k)] = one_trial(policy, instance, orders, fixed, seed, k, estimator);
    }
  }
  return values;
}

}  // namespace

std::vector<double> trial_values(const Policy& policy, const Instance& instance, std::int64_t trials,
                                 std::uint64_t seed, Estimator estimator) {
  return run_all(policy, instance, {}, trials, seed, estimator, true);
}

Estimate estimate(const Policy& policy, const Instance& instance, std::int64_t trials, std::uint64_t seed,
                  Estimator estimator) {
  return summarize(run_all(policy, instance, {}, trials, seed, estimator, true));
}

Estimate estimate_serial(const Policy& policy, const Instance& instance, std::int64_t trials, std::uint64_t seed,
                         Estimator estimator) {
  return summarize(run_all(policy, instance, {}, trials, seed, estimator, false));
}

Estimate estimate_order(const Policy& policy, const Instance& instance, std::span<const int> perm,
                        std::int64_t trials, std::uint64_t seed, Estimator estimator) {
  if (perm.empty()) throw ParameterError("estimate_order: empty order");
  return summarize(run_all(policy, instance, perm, trials, seed, estimator, true));
}

}  // namespace osm
