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

#include "osm/instance.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "osm/errors.hpp"

namespace osm {
namespace {

bool is_permutation_of(const std::vector<int>& perm, int T) {
  if (static_cast<int>(perm.size()) != T) return false;
  std::vector<char> seen(static_cast<std::size_t>(T), 0);
  for (int v : perm) {
    if (v < 0 || v >= T || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

}  // namespace

std::vector<Violation> validate(const Instance& instance) {
  std::vector<Violation> out;
  if (instance.n < 1) out.push_back({"n", "n must be at least 1"});
  if (instance.T < 1) out.push_back({"T", "T must be at least 1"});
  if (instance.w.rows() != instance.n || instance.w.cols() != instance.T) {
    out.push_back({"weights", "weights must be n x T"});
    return out;
  }
  if (static_cast<int>(instance.p.size()) != instance.T) {
    out.push_back({"probs", "probs must have length T"});
    return out;
  }
  for (int t = 0; t < instance.T; ++t) {
    const double p = instance.p[static_cast<std::size_t>(t)];
    if (!(p >= 0.0 && p <= 1.0)) {
      out.push_back({"probs[" + std::to_string(t) + "]",
                     "probs[" + std::to_string(t) + "] out of [0,1]"});
    }
  }
  for (int i = 0; i < instance.n; ++i) {
    for (int t = 0; t < instance.T; ++t) {
      const double w = instance.w(i, t);
      const std::string field = "weights[" + std::to_string(i) + "][" + std::to_string(t) + "]";
      if (!std::isfinite(w)) {
        out.push_back({field, field + " not finite"});
      } else if (w < 0.0) {
        out.push_back({field, field + " negative"});
      }
    }
  }
  if (const auto* fixed = std::get_if<FixedOrder>(&instance.arrival)) {
    if (!is_permutation_of(fixed->perm, instance.T)) {
      out.push_back({"arrival.perm", "arrival.perm is not a permutation of [T]"});
    }
  } else {
    const auto& orders = std::get<StochasticOrder>(instance.arrival).orders;
    if (orders.empty()) out.push_back({"arrival.orders", "arrival.orders is empty"});
    double total = 0.0;
    for (std::size_t k = 0; k < orders.size(); ++k) {
      const std::string field = "arrival.orders[" + std::to_string(k) + "]";
      if (!is_permutation_of(orders[k].perm, instance.T)) {
        out.push_back({field + ".perm", field + ".perm is not a permutation of [T]"});
      }
      if (!(orders[k].prob >= 0.0)) out.push_back({field + ".prob", field + ".prob negative"});
      total += orders[k].prob;
    }
    if (!orders.empty() && std::abs(total - 1.0) > 1e-12) {
      out.push_back({"arrival.orders", "order probabilities sum to " + std::to_string(total)});
    }
  }
  return out;
}

void require_valid(const Instance& instance) {
  const auto violations = validate(instance);
  if (!violations.empty()) throw ParameterError("invalid instance: " + violations.front().message);
}

std::vector<int> identity_perm(int T) {
  std::vector<int> perm(static_cast<std::size_t>(T));
  std::iota(perm.begin(), perm.end(), 0);
  return perm;
}

std::vector<WeightedOrder> arrival_orders(const ArrivalModel& arrival) {
  if (const auto* fixed = std::get_if<FixedOrder>(&arrival)) return {{fixed->perm, 1.0}};
  return std::get<StochasticOrder>(arrival).orders;
}

Instance normalize(const Instance& instance, double exante_value) {
  if (!(exante_value > 0.0)) throw ParameterError("normalize: exante_value must be positive");
  Instance out = instance;
  for (double& v : out.w.data()) v /= exante_value;
  return out;
}

}  // namespace osm
