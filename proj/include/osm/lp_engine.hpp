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

#ifndef OSM_LP_ENGINE_HPP_
#define OSM_LP_ENGINE_HPP_

#include <span>
#include <vector>

#include "osm/frac_solution.hpp"
#include "osm/instance.hpp"
#include "osm/matrix.hpp"
#include "osm/simplex.hpp"

namespace osm {

struct Decomposition;

struct ExAnteResult {
  FracSolution solution;
  double value = 0.0;
  double dual_value = 0.0;
};

// max sum w x  s.t.  q_t(x) <= p_t, q_i(x) <= 1, x >= 0.
ExAnteResult solve_ex_ante(const Instance& instance);

double lp_value(const Instance& instance, const FracSolution& x);
double lp_value_i(const Instance& instance, const FracSolution& x, int i);

struct ThresholdProfile {
  std::vector<double> lb;
  std::vector<double> tau;
  std::vector<double> lp;

  double lb_total() const;
  double lp_total() const;
};

struct RowThreshold {
  double lb = 0.0;
  double tau = 0.0;
};

// LB_i for a single row: the best fixed threshold against the worst arrival
// order, over thresholds {0} and the distinct weights with x > 0. Returns the
// smallest maximizing threshold.
RowThreshold row_threshold(std::span<const double> w, std::span<const double> x);

ThresholdProfile threshold_profile(const Instance& instance, const FracSolution& x);

// Value of Alg^b's threshold rule for a given threshold, worst order.
double row_threshold_value(std::span<const double> w, std::span<const double> x, double tau);

enum class SlackStatus { kOptimal, kInfeasible };

struct SlacknessResult {
  SlackStatus status = SlackStatus::kInfeasible;
  FracSolution y_o;
  double slack_value = 0.0;
  double opt_constraint_rhs = 0.0;
  double dual_value = 0.0;
};

// LP_slack objective evaluated at y.
double slackness_objective(const Instance& instance, const FracSolution& x_tilde_L,
                           const EdgeMask& large, const FracSolution& y);

SlacknessResult solve_slackness(const Instance& instance, const FracSolution& x_tilde_L,
                                const EdgeMask& large, double eps_o);
SlacknessResult solve_slackness(const Instance& instance, const Decomposition& decomposition,
                                double eps_o);

// f_t of the submodular LP at a single online vertex: max sum_i hat_w z -
// sum_{i in L} hat_w xl subject to sum_i z <= p_t, z <= xl on large edges and
// z <= r elsewhere. Greedy fractional knapsack.
double submod_value(double p_t, std::span<const double> r_col, std::span<const double> xl_col,
                    std::span<const char> large_col, std::span<const double> hat_w_col);
inline double submod_value(const Instance& instance, int t, std::span<const double> r_col,
                           std::span<const double> xl_col, std::span<const char> large_col,
                           std::span<const double> hat_w_col) {
  return submod_value(instance.p[static_cast<std::size_t>(t)], r_col, xl_col, large_col, hat_w_col);
}

}  // namespace osm

#endif  // OSM_LP_ENGINE_HPP_
