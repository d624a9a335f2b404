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

#ifndef OSM_DECOMPOSITION_HPP_
#define OSM_DECOMPOSITION_HPP_

#include <string>
#include <vector>

#include "osm/frac_solution.hpp"
#include "osm/instance.hpp"
#include "osm/matrix.hpp"

namespace osm {

enum class Applicability { kApplicable, kNotApplicable };

struct Lemma41Witness {
  Applicability applicability = Applicability::kNotApplicable;
  double delta_bound = 0.0;
  double mass_above_beta = 0.0;
  double value_above_beta = 0.0;
  double value_bound = 0.0;
  bool mass_ok = true;
  bool value_ok = true;
  bool holds = true;
};

// Single-row free-probability bounds. Throws ParameterError unless
// 0 < mu < 0.5 and beta > 0.5 + mu.
Lemma41Witness lemma41_witness(const Instance& instance, const FracSolution& x, int i, double mu, double beta);

struct Decomposition {
  FracSolution x_tilde;
  FracSolution x_tilde_L;
  EdgeMask large_edges;
  double gamma = 0.0;
  double alpha = 0.0;
  double delta_x = 0.0;
  std::vector<int> pruned_set;  // U_0
  bool premises_hold = false;
  std::vector<std::string> warnings;
};

// L = {(i,t): w_it > 0 and w_it >= alpha * LP_i(x_tilde)}.
EdgeMask large_edge_set(const Instance& instance, const FracSolution& x_tilde, double alpha);

// Prunes rows outside U_0 = {i: LP_i(a) > 0, LB_i(a) < (0.5 + gamma^{3/4}) LP_i(a)}
// and splits off the large part. When LB(a) <= (0.5 + gamma) LP(a),
// gamma <= 1e-4 and alpha >= 1, a broken invariant throws
// InvariantViolation; otherwise broken invariants become warnings.
Decomposition decompose(const Instance& instance, const FracSolution& a, double gamma, double alpha);

// The five invariants, one message per failure.
std::vector<std::string> decomposition_failures(const Instance& instance, const FracSolution& a,
                                                const Decomposition& d);

}  // namespace osm

#endif  // OSM_DECOMPOSITION_HPP_
