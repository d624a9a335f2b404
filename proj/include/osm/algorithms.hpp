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

#ifndef OSM_ALGORITHMS_HPP_
#define OSM_ALGORITHMS_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "osm/decomposition.hpp"
#include "osm/frac_solution.hpp"
#include "osm/generators.hpp"
#include "osm/instance.hpp"
#include "osm/lp_engine.hpp"
#include "osm/matrix.hpp"
#include "osm/oracles.hpp"
#include "osm/policy.hpp"
#include "osm/rng.hpp"

namespace osm {

struct AlgoConfig {
  double eps = 1e-2;
  double eps_o = 5e-2;
  double eps_s = 1e-1;
  double eps_alg = 0.46415888336127786;  // eps_s^{1/3}
  std::optional<double> delta_alg;       // overrides the computed mixing probability
  int partition_samples = 64;
  std::uint64_t seed = 1;
};

// eps = 1e-2, eps_o = 5e-2, eps_s = 1e-1, eps_alg = eps_s^{1/3}.
AlgoConfig practical_config();
// Throws ParameterError unless every eps lies in (0, 1), delta_alg (if set)
// in [0, 1] and partition_samples >= 1.
void validate_config(const AlgoConfig& config);

// ---------------------------------------------------------------- baseline

// Alg^b(x): a realized t proposes to i with probability x_it / p_t and i
// accepts the first proposal of weight at least tau_i(x).
class BaselinePolicy : public Policy {
 public:
  BaselinePolicy(const Instance& instance, const FracSolution& x);
  std::unique_ptr<PolicyRun> start(Rng& rng) const override;
  std::string name() const override { return "baseline"; }
  const std::vector<double>& thresholds() const { return tau_; }

 private:
  Instance instance_;
  FracSolution x_;
  std::vector<double> tau_;
};

double run_baseline(const Instance& instance, const FracSolution& x, std::span<const int> perm, Rng& rng);

// Exact expectation of Alg^b(x) for one order: proposals to a row are
// independent across arrivals, so each row is a single-choice problem.
double baseline_value(const Instance& instance, const FracSolution& x, std::span<const int> perm);
// Same, averaged over the instance's arrival model.
double baseline_value(const Instance& instance, const FracSolution& x);

// ----------------------------------------------------------------- warm-up

// Stage 1 matches each realized free vertex to its unique neighbour. When
// the last free neighbour of i has arrived, i claims its heaviest
// deterministic neighbour that is still unassigned and yet to arrive.
class WarmupPolicy : public Policy {
 public:
  // Throws PreconditionError if the warm-up assumptions fail.
  explicit WarmupPolicy(WarmupInstance warmup);
  std::unique_ptr<PolicyRun> start(Rng& rng) const override;
  std::string name() const override { return "warmup"; }
  const WarmupInstance& warmup() const { return warmup_; }

 private:
  WarmupInstance warmup_;
  std::vector<int> free_count_;       // |FR_i|
  std::vector<int> free_owner_;       // per online vertex, i if t in FR_i
};

double run_warmup(const WarmupInstance& warmup, std::span<const int> perm, Rng& rng);

// ----------------------------------------------------------- small slack

// Deterministic part of the small-slackness algorithm: the fractional
// matrix x (with the dummy row kept as the column residual), stage
// transitions and the greedy reallocation. Only vertices that already
// arrived are consulted.
class SmallSlackEngine {
 public:
  SmallSlackEngine(const Instance& instance, const Decomposition& decomposition, const AlgoConfig& config);

  int n() const { return n_; }
  int T() const { return T_; }
  double x(int i, int t) const { return x_(i, t); }
  double dummy(int t) const { return dummy_[static_cast<std::size_t>(t)]; }
  bool stage2(int i) const { return switch_vertex_[static_cast<std::size_t>(i)] >= 0; }
  int switch_vertex(int i) const { return switch_vertex_[static_cast<std::size_t>(i)]; }
  // Sum of x^{(s)}_is over t_i < s < current arrival.
  double stage2_mass(int i) const { return stage2_mass_[static_cast<std::size_t>(i)]; }
  double budget(int i) const { return budget_[static_cast<std::size_t>(i)]; }
  const Matrix& matrix() const { return x_; }

  // Bookkeeping after vertex t arrived and was handled: accumulate the
  // stage-2 masses, move rows to stage 2 and reallocate their mass.
  void advance(int t, std::vector<int>* transitions = nullptr, std::vector<Transfer>* transfers = nullptr);

  // Throws InvariantViolation with a state dump if column sums, large-edge
  // caps or row capacities are broken.
  void check_invariants() const;

 private:
  void reallocate(int i, std::vector<Transfer>* transfers);

  const Instance* instance_;
  const Decomposition* decomposition_;
  int n_;
  int T_;
  double eps_alg_;
  Matrix x_;
  std::vector<double> dummy_;
  std::vector<char> arrived_;
  std::vector<int> switch_vertex_;
  std::vector<double> stage2_mass_;
  std::vector<double> collected_;  // sum_{s <= t} w x_tilde_L over arrived s
  std::vector<double> target_;     // (1 - eps_alg) sum_s w x_tilde_L
  std::vector<double> budget_;     // non-large load cap 1 - max(delta_x, q_i(x_tilde_L))
};

struct SmallSlackTrace {
  std::vector<int> order;
  std::vector<int> position;      // arrival position of each online vertex
  Matrix x_at_arrival;            // x^{(t)}_it
  std::vector<int> switch_vertex; // t_i, -1 if the row never leaves stage 1
  Matrix r_hat;                   // initial non-large mass set at t_i
  std::vector<std::vector<int>> transitions;   // per arrival position
  std::vector<std::vector<Transfer>> transfers;
  // (i, t) in E2: t arrives after t_i.
  bool in_e2(int i, int t) const;
};

// Replays the deterministic part along `perm`.
SmallSlackTrace small_slack_trace(const Instance& instance, const Decomposition& decomposition,
                                  const AlgoConfig& config, std::span<const int> perm);

class SmallSlackPolicy : public Policy {
 public:
  // `instance` must be normalized and `decomposition` computed on it.
  SmallSlackPolicy(const Instance& instance, Decomposition decomposition, AlgoConfig config);
  std::unique_ptr<PolicyRun> start(Rng& rng) const override;
  std::string name() const override { return "small-slack"; }
  const Instance& instance() const { return instance_; }
  const Decomposition& decomposition() const { return decomposition_; }
  const AlgoConfig& config() const { return config_; }

 private:
  Instance instance_;
  Decomposition decomposition_;
  AlgoConfig config_;
};

struct SmallSlackOutcome {
  double realized = 0.0;
  SmallSlackTrace trace;
  std::vector<int> match_time;     // per offline vertex, online vertex matched or -1
  double max_accept_prob = 0.0;
  std::vector<ArrivalEvent> events;
};

SmallSlackOutcome run_small_slackness(const Instance& instance, const Decomposition& decomposition,
                                      const AlgoConfig& config, std::span<const int> perm, Rng& rng);

// (1 - delta_x) (sum_{E1} w x^{(t)} + 1/2 sum_{E2} w x^{(t)}).
double lemma61_bound(const Instance& instance, const SmallSlackTrace& trace, double delta_x);

struct LemmaCheck {
  Applicability applicability = Applicability::kApplicable;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
  std::string note;
};

// Deterministic weight carried by stage-2 edges under y*: requires
// OPT_online >= 1 - eps_o and LP_slack < eps_s, otherwise not applicable.
LemmaCheck verify_lemma_6_2(const Instance& instance, const Decomposition& decomposition,
                            const SmallSlackTrace& trace, const OnlineOptProfile& profile,
                            const AlgoConfig& config);

// Gain of the reallocation over x_tilde_L against the y* benchmark.
// Not applicable when some row has q_i(x_tilde_L) > delta_x.
LemmaCheck verify_lemma_6_3(const Instance& instance, const Decomposition& decomposition,
                            const SmallSlackTrace& trace, const OnlineOptProfile& profile,
                            const AlgoConfig& config);

// Left-hand side of the reallocation-gain check computed from the trace,
// and the same quantity as sum_t f_t(r_hat).
double lemma63_lhs(const Instance& instance, const Decomposition& decomposition, const SmallSlackTrace& trace);
double lemma63_submod_sum(const Instance& instance, const Decomposition& decomposition,
                          const SmallSlackTrace& trace);

// ----------------------------------------------------------- large slack

struct Candidate {
  std::string name;
  FracSolution z;
  double lb = 0.0;
  double lp = 0.0;
  bool feasible = true;
};

struct LargeSlackResult {
  FracSolution z;
  double lb = 0.0;
  std::string chosen;
  bool shortcut = false;  // LB(y^o) >= 0.5 + eps
  double cross_mass = 0.0;  // sum w (x_L (1 - y_L/p) + y_L (1 - x_L/p)) over L
  double row_gain = 0.0;    // LP_i(y) - LP_i(x) summed over rows where LP_i(y) > 2 LP_i(x)
  double branch_bar = 0.0;  // eps_s - eps_o^{1/4}
  bool cross_mass_large = false;
  bool row_gain_large = false;
  double case1_bar = 0.0;   // (0.5 + eps) / (1 - delta_x - eps_o^{1/4})
  bool a_case1 = false;
  bool b_case1 = false;
  std::vector<Candidate> candidates;
  std::vector<std::string> warnings;
};

// Builds z in P with large LB from an LP_slack solution of large value.
// Throws ParameterError unless the slack LP was optimal with value >= eps_s.
// A candidate outside P throws InvariantViolation when eps, eps_o <= 1e-4
// and eps_o >= 3 eps; otherwise it is dropped with a warning.
LargeSlackResult construct_large_slackness_solution(const Instance& instance, const Decomposition& decomposition,
                                                    const SlacknessResult& slackness, const AlgoConfig& config);

// -------------------------------------------------------------- mixture

// c = 0.125 - 1.5 eps_s^{1/3} - eps_o - 6 eps^{1/4} - eps_s.
double mixing_c(const AlgoConfig& config);
// eps_o / (1 + 2c(1 - eps_o)), 0 when c < 0 (a warning is appended), or
// the configured override.
double compute_delta_alg(const AlgoConfig& config, std::vector<std::string>* warnings = nullptr);

// Per trial, runs `small` with probability delta and `baseline` otherwise.
class MixturePolicy : public Policy {
 public:
  MixturePolicy(double delta, std::shared_ptr<const Policy> small, std::shared_ptr<const Policy> baseline);
  std::unique_ptr<PolicyRun> start(Rng& rng) const override;
  std::string name() const override { return "mixture"; }
  double delta() const { return delta_; }

 private:
  double delta_;
  std::shared_ptr<const Policy> small_;
  std::shared_ptr<const Policy> baseline_;
};

std::shared_ptr<const Policy> mix_policies(const AlgoConfig& config, std::shared_ptr<const Policy> small,
                                           std::shared_ptr<const Policy> baseline,
                                           std::vector<std::string>* warnings = nullptr);

}  // namespace osm

#endif  // OSM_ALGORITHMS_HPP_
