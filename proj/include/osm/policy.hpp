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

#ifndef OSM_POLICY_HPP_
#define OSM_POLICY_HPP_

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "osm/instance.hpp"
#include "osm/rng.hpp"

namespace osm {

struct Arrival {
  int t = -1;
  bool realized = false;
};

// Hands out the arrival sequence one vertex at a time. Policies are driven
// from this stream and never see the permutation itself.
class ArrivalStream {
 public:
  ArrivalStream(const std::vector<double>& p, std::span<const int> perm, Rng& rng)
      : p_(p), perm_(perm), rng_(rng) {}
  std::optional<Arrival> next() {
    if (k_ >= perm_.size()) return std::nullopt;
    const int t = perm_[k_++];
    return Arrival{t, rng_.bernoulli(p_[static_cast<std::size_t>(t)])};
  }
  std::size_t position() const { return k_; }

 private:
  const std::vector<double>& p_;
  std::span<const int> perm_;
  Rng& rng_;
  std::size_t k_ = 0;
};

struct Transfer {
  int i = -1;
  int j = -1;  // donor row, -1 for the dummy vertex
  int s = -1;
  double delta = 0.0;
};

// One line of an exported trace.
struct ArrivalEvent {
  int t = -1;
  bool realized = false;
  int proposal = -1;
  double accept_prob = 0.0;
  int matched = -1;  // offline vertex taken if t realized, -1 otherwise
  std::vector<int> transitions;
  std::vector<Transfer> transfers;
};

// State of one trial. decide() picks the offline vertex that t is matched to
// if it turns out to be realized; all coins are drawn there so the choice
// does not depend on the realization. observe() then reveals it.
class PolicyRun {
 public:
  virtual ~PolicyRun() = default;
  virtual int decide(int t, Rng& rng) = 0;
  virtual void observe(int t, bool realized, int decided) = 0;
  // Extra detail for the trace, called after observe().
  virtual void annotate(ArrivalEvent& /*event*/) const {}
};

class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::unique_ptr<PolicyRun> start(Rng& rng) const = 0;
  virtual std::string name() const = 0;
};

struct TrialOutcome {
  double realized = 0.0;     // weight of the matching built in this trial
  double conditional = 0.0;  // sum over arrivals of p_t times the weight the decision would earn
};

// Runs one trial of `policy` on `perm`. Weights and probabilities come from
// `instance`. Throws InvariantViolation if the policy matches an offline
// vertex twice.
TrialOutcome run_trial(const Policy& policy, const Instance& instance, std::span<const int> perm, Rng& rng,
                       std::vector<ArrivalEvent>* events = nullptr);

}  // namespace osm

#endif  // OSM_POLICY_HPP_
