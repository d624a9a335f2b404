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

#ifndef OSM_INSTANCE_HPP_
#define OSM_INSTANCE_HPP_

#include <string>
#include <variant>
#include <vector>

#include "osm/matrix.hpp"

namespace osm {

// perm[k] is the online vertex arriving k-th.
struct FixedOrder {
  std::vector<int> perm;
};

struct WeightedOrder {
  std::vector<int> perm;
  double prob = 1.0;
};

struct StochasticOrder {
  std::vector<WeightedOrder> orders;
};

using ArrivalModel = std::variant<FixedOrder, StochasticOrder>;

// Bernoulli online bipartite matching instance. Offline vertices are rows of
// `w`, online vertices are columns. A missing edge is w(i, t) == 0.
struct Instance {
  int n = 0;
  int T = 0;
  Matrix w;
  std::vector<double> p;
  ArrivalModel arrival;

  int n_offline() const { return n; }
  int n_online() const { return T; }
  bool has_edge(int i, int t) const { return w(i, t) > 0.0; }
};

struct Violation {
  std::string field;
  std::string message;
};

std::vector<Violation> validate(const Instance& instance);

// Throws ParameterError with the first violation if the instance is invalid.
void require_valid(const Instance& instance);

std::vector<int> identity_perm(int T);

// Every order the arrival model can produce, with its probability.
std::vector<WeightedOrder> arrival_orders(const ArrivalModel& arrival);

// Divides every weight by exante_value.
Instance normalize(const Instance& instance, double exante_value);

}  // namespace osm

#endif  // OSM_INSTANCE_HPP_
