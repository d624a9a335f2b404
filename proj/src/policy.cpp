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

#include "osm/policy.hpp"

#include <string>

#include "osm/errors.hpp"

namespace osm {

TrialOutcome run_trial(const Policy& policy, const Instance& instance, std::span<const int> perm, Rng& rng,
                       std::vector<ArrivalEvent>* events) {
  TrialOutcome out;
  auto run = policy.start(rng);
  std::vector<char> matched(static_cast<std::size_t>(instance.n), 0);
  ArrivalStream stream(instance.p, perm, rng);
  while (auto arrival = stream.next()) {
    const int t = arrival->t;
    const int d = run->decide(t, rng);
    if (d >= 0) {
      if (d >= instance.n) throw InvariantViolation(policy.name() + ": decision names offline vertex " + std::to_string(d));
      if (matched[static_cast<std::size_t>(d)]) {
        throw InvariantViolation(policy.name() + ": offline vertex " + std::to_string(d) + " matched twice");
      }
      const double w = instance.w(d, t);
      out.conditional += instance.p[static_cast<std::size_t>(t)] * w;
      if (arrival->realized) {
        matched[static_cast<std::size_t>(d)] = 1;
        out.realized += w;
      }
    }
    run->observe(t, arrival->realized, d);
    if (events) {
      ArrivalEvent e;
      e.t = t;
      e.realized = arrival->realized;
      e.matched = arrival->realized ? d : -1;
      run->annotate(e);
      events->push_back(std::move(e));
    }
  }
  return out;
}

}  // namespace osm
