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

#include "osm/algorithms.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "osm/errors.hpp"

namespace osm {

AlgoConfig practical_config() {
  AlgoConfig c;
  c.eps = 1e-2;
  c.eps_o = 5e-2;
  c.eps_s = 1e-1;
  c.eps_alg = std::cbrt(c.eps_s);
  return c;
}

void validate_config(const AlgoConfig& config) {
  auto open_unit = [](double v, const char* name) {
    if (!(v > 0.0 && v < 1.0)) throw ParameterError(std::string(name) + " must lie in (0, 1)");
  };
  open_unit(config.eps, "eps");
  open_unit(config.eps_o, "eps_o");
  open_unit(config.eps_s, "eps_s");
  open_unit(config.eps_alg, "eps_alg");
  if (config.delta_alg && !(*config.delta_alg >= 0.0 && *config.delta_alg <= 1.0)) {
    throw ParameterError("delta_alg must lie in [0, 1]");
  }
  if (config.partition_samples < 1) throw ParameterError("partition_samples must be at least 1");
}

// ---------------------------------------------------------------- baseline

namespace {

// Offline vertex proposed to by t, or -1 for the residual probability.
int draw_proposal(const Matrix& x, int n, int t, double p, Rng& rng) {
  const double u = rng.uniform() * p;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    acc += x(i, t);
    if (u < acc) return i;
  }
  return -1;
}

class BaselineRun : public PolicyRun {
 public:
  BaselineRun(const Instance& instance, const FracSolution& x, const std::vector<double>& tau)
      : instance_(instance), x_(x), tau_(tau), matched_(static_cast<std::size_t>(instance.n), 0) {}

  int decide(int t, Rng& rng) override {
    proposal_ = -1;
    const double p = instance_.p[static_cast<std::size_t>(t)];
    if (!(p > 0.0)) return -1;
    proposal_ = draw_proposal(x_.x(), instance_.n, t, p, rng);
    if (proposal_ < 0) return -1;
    const auto i = static_cast<std::size_t>(proposal_);
    if (matched_[i] || instance_.w(proposal_, t) < tau_[i]) return -1;
    return proposal_;
  }

  void observe(int /*t*/, bool realized, int decided) override {
    if (realized && decided >= 0) matched_[static_cast<std::size_t>(decided)] = 1;
  }

  void annotate(ArrivalEvent& event) const override {
    event.proposal = proposal_;
    if (proposal_ >= 0) {
      const auto i = static_cast<std::size_t>(proposal_);
      event.accept_prob = instance_.w(proposal_, event.t) >= tau_[i] ? 1.0 : 0.0;
    }
  }

 private:
  const Instance& instance_;
  const FracSolution& x_;
  const std::vector<double>& tau_;
  std::vector<char> matched_;
  int proposal_ = -1;
};

}  // namespace

BaselinePolicy::BaselinePolicy(const Instance& instance, const FracSolution& x)
    : instance_(instance), x_(x), tau_(threshold_profile(instance, x).tau) {
  if (!in_polytope(instance, x)) throw PreconditionError("baseline: " + polytope_violation(instance, x));
}

std::unique_ptr<PolicyRun> BaselinePolicy::start(Rng& /*rng*/) const {
  return std::make_unique<BaselineRun>(instance_, x_, tau_);
}

double run_baseline(const Instance& instance, const FracSolution& x, std::span<const int> perm, Rng& rng) {
  BaselinePolicy policy(instance, x);
  return run_trial(policy, instance, perm, rng).realized;
}

double baseline_value(const Instance& instance, const FracSolution& x, std::span<const int> perm) {
  const std::vector<double> tau = threshold_profile(instance, x).tau;
  double value = 0.0;
  for (int i = 0; i < instance.n; ++i) {
    double free = 1.0;
    for (int t : perm) {
      const double w = instance.w(i, t);
      if (w < tau[static_cast<std::size_t>(i)]) continue;
      value += free * x(i, t) * w;
      free *= 1.0 - x(i, t);
    }
  }
  return value;
}

double baseline_value(const Instance& instance, const FracSolution& x) {
  double value = 0.0;
  for (const WeightedOrder& order : arrival_orders(instance.arrival)) {
    value += order.prob * baseline_value(instance, x, order.perm);
  }
  return value;
}

// ----------------------------------------------------------------- warm-up

namespace {

class WarmupRun : public PolicyRun {
 public:
  WarmupRun(const WarmupInstance& warmup, const std::vector<int>& free_count, const std::vector<int>& free_owner)
      : warmup_(warmup),
        free_owner_(free_owner),
        remaining_(free_count),
        assign_(warmup.unique_map),
        arrived_(static_cast<std::size_t>(warmup.base.T), 0),
        matched_(static_cast<std::size_t>(warmup.base.n), 0),
        is_det_(static_cast<std::size_t>(warmup.base.T), 0) {
    for (int t : warmup.det_set) is_det_[static_cast<std::size_t>(t)] = 1;
    for (int i = 0; i < warmup.base.n; ++i) {
      if (remaining_[static_cast<std::size_t>(i)] == 0) claim(i);
    }
  }

  int decide(int t, Rng& /*rng*/) override {
    const int a = assign_[static_cast<std::size_t>(t)];
    if (a < 0 || matched_[static_cast<std::size_t>(a)]) return -1;
    return a;
  }

  void observe(int t, bool realized, int decided) override {
    transitions_.clear();
    if (realized && decided >= 0) matched_[static_cast<std::size_t>(decided)] = 1;
    arrived_[static_cast<std::size_t>(t)] = 1;
    const int owner = free_owner_[static_cast<std::size_t>(t)];
    if (owner >= 0 && --remaining_[static_cast<std::size_t>(owner)] == 0) {
      claim(owner);
      transitions_.push_back(owner);
    }
  }

  void annotate(ArrivalEvent& event) const override {
    event.proposal = assign_[static_cast<std::size_t>(event.t)];
    event.accept_prob = event.proposal >= 0 ? 1.0 : 0.0;
    event.transitions = transitions_;
  }

 private:
  // Second stage of i: the heaviest deterministic neighbour still
  // unassigned and yet to arrive.
  void claim(int i) {
    const Instance& inst = warmup_.base;
    int best = -1;
    for (int s = 0; s < inst.T; ++s) {
      const auto su = static_cast<std::size_t>(s);
      if (!is_det_[su] || arrived_[su] || assign_[su] >= 0 || !(inst.w(i, s) > 0.0)) continue;
      if (best < 0 || inst.w(i, s) > inst.w(i, best)) best = s;
    }
    if (best >= 0) assign_[static_cast<std::size_t>(best)] = i;
  }

  const WarmupInstance& warmup_;
  const std::vector<int>& free_owner_;
  std::vector<int> remaining_;
  std::vector<int> assign_;
  std::vector<char> arrived_;
  std::vector<char> matched_;
  std::vector<char> is_det_;
  std::vector<int> transitions_;
};

}  // namespace

WarmupPolicy::WarmupPolicy(WarmupInstance warmup) : warmup_(std::move(warmup)) {
  const auto problems = check_warmup(warmup_);
  if (!problems.empty()) throw PreconditionError("warm-up assumption violated: " + problems.front());
  free_count_.assign(static_cast<std::size_t>(warmup_.base.n), 0);
  free_owner_.assign(static_cast<std::size_t>(warmup_.base.T), -1);
  for (int t : warmup_.free_set) {
    const int i = warmup_.unique_map[static_cast<std::size_t>(t)];
    free_owner_[static_cast<std::size_t>(t)] = i;
    ++free_count_[static_cast<std::size_t>(i)];
  }
}

std::unique_ptr<PolicyRun> WarmupPolicy::start(Rng& /*rng*/) const {
  return std::make_unique<WarmupRun>(warmup_, free_count_, free_owner_);
}

double run_warmup(const WarmupInstance& warmup, std::span<const int> perm, Rng& rng) {
  WarmupPolicy policy(warmup);
  return run_trial(policy, warmup.base, perm, rng).realized;
}

// -------------------------------------------------------------- mixture

double mixing_c(const AlgoConfig& config) {
  return 0.125 - 1.5 * std::cbrt(config.eps_s) - config.eps_o - 6.0 * std::pow(config.eps, 0.25) - config.eps_s;
}

double compute_delta_alg(const AlgoConfig& config, std::vector<std::string>* warnings) {
  if (config.delta_alg) return *config.delta_alg;
  const double c = mixing_c(config);
  if (c < 0.0) {
    if (warnings) {
      warnings->push_back("mixing constant c = " + std::to_string(c) +
                          " is negative for this parameter set; delta_alg clamped to 0");
    }
    return 0.0;
  }
  return config.eps_o / (1.0 + 2.0 * c * (1.0 - config.eps_o));
}

namespace {

class MixtureRun : public PolicyRun {
 public:
  explicit MixtureRun(std::unique_ptr<PolicyRun> inner) : inner_(std::move(inner)) {}
  int decide(int t, Rng& rng) override { return inner_->decide(t, rng); }
  void observe(int t, bool realized, int decided) override { inner_->observe(t, realized, decided); }
  void annotate(ArrivalEvent& event) const override { inner_->annotate(event); }

 private:
  std::unique_ptr<PolicyRun> inner_;
};

}  // namespace

MixturePolicy::MixturePolicy(double delta, std::shared_ptr<const Policy> small, std::shared_ptr<const Policy> baseline)
    : delta_(delta), small_(std::move(small)), baseline_(std::move(baseline)) {
  if (!(delta_ >= 0.0 && delta_ <= 1.0)) throw ParameterError("mixture probability must lie in [0, 1]");
  if (!small_ || !baseline_) throw ParameterError("mixture needs both policies");
}

std::unique_ptr<PolicyRun> MixturePolicy::start(Rng& rng) const {
  // No coin at the endpoints so that delta 0 and 1 replay the component
  // policy draw for draw.
  bool pick_small = delta_ >= 1.0;
  if (delta_ > 0.0 && delta_ < 1.0) pick_small = rng.bernoulli(delta_);
  const Policy& chosen = pick_small ? *small_ : *baseline_;
  return std::make_unique<MixtureRun>(chosen.start(rng));
}

std::shared_ptr<const Policy> mix_policies(const AlgoConfig& config, std::shared_ptr<const Policy> small,
                                           std::shared_ptr<const Policy> baseline,
                                           std::vector<std::string>* warnings) {
  return std::make_shared<MixturePolicy>(compute_delta_alg(config, warnings), std::move(small), std::move(baseline));
}

}  // namespace osm
