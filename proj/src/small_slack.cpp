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

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>

#include "osm/algorithms.hpp"
#include "osm/errors.hpp"

namespace osm {

namespace {

constexpr double kStateTol = 1e-9;

double hat_weight_large(const Instance& instance, int i, int t) { return 2.0 * instance.w(i, t); }

}  // namespace

SmallSlackEngine::SmallSlackEngine(const Instance& instance, const Decomposition& decomposition,
                                   const AlgoConfig& config)
    : instance_(&instance),
      decomposition_(&decomposition),
      n_(instance.n),
      T_(instance.T),
      eps_alg_(config.eps_alg),
      x_(decomposition.x_tilde_L.x()),
      dummy_(static_cast<std::size_t>(instance.T), 0.0),
      arrived_(static_cast<std::size_t>(instance.T), 0),
      switch_vertex_(static_cast<std::size_t>(instance.n), -1),
      stage2_mass_(static_cast<std::size_t>(instance.n), 0.0),
      collected_(static_cast<std::size_t>(instance.n), 0.0),
      target_(static_cast<std::size_t>(instance.n), 0.0),
      budget_(static_cast<std::size_t>(instance.n), 0.0) {
  if (x_.rows() != n_ || x_.cols() != T_) throw ParameterError("small-slack: decomposition does not match instance");
  const FracSolution& xl = decomposition.x_tilde_L;
  for (int t = 0; t < T_; ++t) {
    const double p = instance.p[static_cast<std::size_t>(t)];
    dummy_[static_cast<std::size_t>(t)] = p > 0.0 ? std::max(0.0, p - xl.col_load(t)) : 0.0;
  }
  for (int i = 0; i < n_; ++i) {
    double total = 0.0;
    for (int t = 0; t < T_; ++t) total += instance.w(i, t) * xl(i, t);
    const auto iu = static_cast<std::size_t>(i);
    target_[iu] = (1.0 - eps_alg_) * total;
    budget_[iu] = std::max(0.0, 1.0 - std::max(decomposition.delta_x, xl.row_load(i)));
  }
}

void SmallSlackEngine::advance(int t, std::vector<int>* transitions, std::vector<Transfer>* transfers) {
  const Instance& inst = *instance_;
  const FracSolution& xl = decomposition_->x_tilde_L;
  const auto tu = static_cast<std::size_t>(t);
  for (int i = 0; i < n_; ++i) {
    if (stage2(i)) stage2_mass_[static_cast<std::size_t>(i)] += x_(i, t);
  }
  arrived_[tu] = 1;
  std::vector<int> moved;
  for (int i = 0; i < n_; ++i) {
    if (stage2(i)) continue;
    const auto iu = static_cast<std::size_t>(i);
    collected_[iu] += inst.w(i, t) * xl(i, t);
    if (collected_[iu] >= target_[iu]) {
      switch_vertex_[iu] = t;
      moved.push_back(i);
    }
  }
  for (int i : moved) {
    if (transitions) transitions->push_back(i);
    reallocate(i, transfers);
  }
  if (!moved.empty()) check_invariants();
}

void SmallSlackEngine::reallocate(int i, std::vector<Transfer>* transfers) {
  const Instance& inst = *instance_;
  const EdgeMask& large = decomposition_->large_edges;
  struct Donor {
    double gain;
    int s;
    int j;  // -1 is the dummy row
  };
  std::vector<Donor> donors;
  double load = 0.0;
  for (int s = 0; s < T_; ++s) {
    if (!large(i, s)) load += x_(i, s);
  }
  for (int s = 0; s < T_; ++s) {
    if (arrived_[static_cast<std::size_t>(s)] || large(i, s) || !(inst.w(i, s) > 0.0)) continue;
    const double w_is = inst.w(i, s);
    if (dummy_[static_cast<std::size_t>(s)] > 0.0) donors.push_back({w_is, s, -1});
    for (int j = 0; j < n_; ++j) {
      if (j == i || !(x_(j, s) > 0.0)) continue;
      const double hat_js = large(j, s) ? hat_weight_large(inst, j, s) : inst.w(j, s);
      const double gain = w_is - hat_js;
      if (gain > 0.0) donors.push_back({gain, s, j});
    }
  }
  std::sort(donors.begin(), donors.end(), [](const Donor& a, const Donor& b) {
    if (a.gain != b.gain) return a.gain > b.gain;
    if (a.s != b.s) return a.s < b.s;
    return a.j < b.j;
  });
  const double budget = budget_[static_cast<std::size_t>(i)];
  for (const Donor& d : donors) {
    if (load >= budget) break;
    double& from = d.j < 0 ? dummy_[static_cast<std::size_t>(d.s)] : x_(d.j, d.s);
    const double delta = std::min(budget - load, from);
    if (!(delta > 0.0)) continue;
    from -= delta;
    x_(i, d.s) += delta;
    load += delta;
    if (transfers) transfers->push_back({i, d.j, d.s, delta});
  }
}

void SmallSlackEngine::check_invariants() const {
  const Instance& inst = *instance_;
  const FracSolution& xl = decomposition_->x_tilde_L;
  const EdgeMask& large = decomposition_->large_edges;
  std::ostringstream bad;
  for (int t = 0; t < T_; ++t) {
    const double p = inst.p[static_cast<std::size_t>(t)];
    double col = dummy_[static_cast<std::size_t>(t)];
    if (col < -kStateTol) bad << "\n  dummy(" << t << ") = " << col;
    for (int i = 0; i < n_; ++i) col += x_(i, t);
    // Columns with p_t = 0 carry nothing; otherwise the dummy row closes them.
    const double expect = p > 0.0 ? p : 0.0;
    if (std::abs(col - expect) > kStateTol) bad << "\n  column " << t << " sums to " << col << ", p = " << p;
  }
  for (int i = 0; i < n_; ++i) {
    double row = 0.0;
    for (int t = 0; t < T_; ++t) {
      const double v = x_(i, t);
      if (v < -kStateTol) bad << "\n  x(" << i << "," << t << ") = " << v;
      if (large(i, t) && v > xl(i, t) + kStateTol) {
        bad << "\n  large edge (" << i << "," << t << ") grew to " << v << " > " << xl(i, t);
      }
      row += v;
    }
    if (row > 1.0 + kStateTol) bad << "\n  row " << i << " load " << row;
  }
  const std::string msg = bad.str();
  if (msg.empty()) return;
  std::ostringstream dump;
  dump << "small-slack state invariant broken:" << msg << "\n  state:";
  for (int i = 0; i < n_; ++i) {
    dump << "\n  row " << i << " t_i=" << switch_vertex_[static_cast<std::size_t>(i)] << ":";
    for (int t = 0; t < T_; ++t) dump << ' ' << x_(i, t);
  }
  dump << "\n  dummy:";
  for (double v : dummy_) dump << ' ' << v;
  throw InvariantViolation(dump.str());
}

bool SmallSlackTrace::in_e2(int i, int t) const {
  const int sv = switch_vertex[static_cast<std::size_t>(i)];
  if (sv < 0) return false;
  return position[static_cast<std::size_t>(t)] > position[static_cast<std::size_t>(sv)];
}

SmallSlackTrace small_slack_trace(const Instance& instance, const Decomposition& decomposition,
                                  const AlgoConfig& config, std::span<const int> perm) {
  SmallSlackEngine engine(instance, decomposition, config);
  SmallSlackTrace tr;
  tr.order.assign(perm.begin(), perm.end());
  tr.position.assign(static_cast<std::size_t>(instance.T), -1);
  tr.x_at_arrival = Matrix(instance.n, instance.T);
  tr.r_hat = Matrix(instance.n, instance.T);
  tr.transitions.resize(perm.size());
  tr.transfers.resize(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) {
    const int t = perm[k];
    tr.position[static_cast<std::size_t>(t)] = static_cast<int>(k);
    for (int i = 0; i < instance.n; ++i) tr.x_at_arrival(i, t) = engine.x(i, t);
    engine.advance(t, &tr.transitions[k], &tr.transfers[k]);
    for (const Transfer& f : tr.transfers[k]) tr.r_hat(f.i, f.s) += f.delta;
  }
  tr.switch_vertex.resize(static_cast<std::size_t>(instance.n));
  for (int i = 0; i < instance.n; ++i) tr.switch_vertex[static_cast<std::size_t>(i)] = engine.switch_vertex(i);
  return tr;
}

// ------------------------------------------------------------ randomized run

namespace {

class SmallSlackRun : public PolicyRun {
 public:
  SmallSlackRun(const Instance& instance, const Decomposition& decomposition, const AlgoConfig& config)
      : instance_(instance),
        engine_(instance, decomposition, config),
        matched_(static_cast<std::size_t>(instance.n), 0) {}

  int decide(int t, Rng& rng) override {
    proposal_ = -1;
    accept_prob_ = 0.0;
    const double p = instance_.p[static_cast<std::size_t>(t)];
    if (!(p > 0.0)) return -1;
    const double u = rng.uniform() * p;
    double acc = 0.0;
    for (int i = 0; i < instance_.n; ++i) {
      acc += engine_.x(i, t);
      if (u < acc) {
        proposal_ = i;
        break;
      }
    }
    const double coin = rng.uniform();
    if (proposal_ < 0 || matched_[static_cast<std::size_t>(proposal_)]) return -1;
    if (!engine_.stage2(proposal_)) {
      accept_prob_ = 1.0;
    } else {
      const double mass = engine_.stage2_mass(proposal_);
      accept_prob_ = 1.0 / (2.0 * (1.0 - 0.5 * mass));
      if (!(accept_prob_ <= 1.0 + 1e-12) || !(accept_prob_ > 0.0)) {
        throw InvariantViolation("small-slack acceptance probability " + std::to_string(accept_prob_) +
                                 " for vertex " + std::to_string(proposal_) + " (stage-2 mass " +
                                 std::to_string(mass) + ")");
      }
      max_accept_ = std::max(max_accept_, accept_prob_);
    }
    return coin < accept_prob_ ? proposal_ : -1;
  }

  void observe(int t, bool realized, int decided) override {
    if (realized && decided >= 0) matched_[static_cast<std::size_t>(decided)] = 1;
    transitions_.clear();
    transfers_.clear();
    engine_.advance(t, &transitions_, &transfers_);
  }

  void annotate(ArrivalEvent& event) const override {
    event.proposal = proposal_;
    event.accept_prob = accept_prob_;
    event.transitions = transitions_;
    event.transfers = transfers_;
  }

  double max_accept() const { return max_accept_; }

 private:
  const Instance& instance_;
  SmallSlackEngine engine_;
  std::vector<char> matched_;
  int proposal_ = -1;
  double accept_prob_ = 0.0;
  double max_accept_ = 0.0;
  std::vector<int> transitions_;
  std::vector<Transfer> transfers_;
};

// Keeps the run alive past run_trial so its statistics can be read.
class HoldingRun : public PolicyRun {
 public:
  explicit HoldingRun(SmallSlackRun* run) : run_(run) {}
  int decide(int t, Rng& rng) override { return run_->decide(t, rng); }
  void observe(int t, bool realized, int decided) override { run_->observe(t, realized, decided); }
  void annotate(ArrivalEvent& event) const override { run_->annotate(event); }

 private:
  SmallSlackRun* run_;
};

class HoldingPolicy : public Policy {
 public:
  explicit HoldingPolicy(SmallSlackRun* run) : run_(run) {}
  std::unique_ptr<PolicyRun> start(Rng& /*rng*/) const override { return std::make_unique<HoldingRun>(run_); }
  std::string name() const override { return "small-slack"; }

 private:
  SmallSlackRun* run_;
};

}  // namespace

SmallSlackPolicy::SmallSlackPolicy(const Instance& instance, Decomposition decomposition, AlgoConfig config)
    : instance_(instance), decomposition_(std::move(decomposition)), config_(std::move(config)) {
  validate_config(config_);
  if (!in_polytope(instance_, decomposition_.x_tilde_L)) {
    throw PreconditionError("small-slack: " + polytope_violation(instance_, decomposition_.x_tilde_L));
  }
}

std::unique_ptr<PolicyRun> SmallSlackPolicy::start(Rng& /*rng*/) const {
  return std::make_unique<SmallSlackRun>(instance_, decomposition_, config_);
}

SmallSlackOutcome run_small_slackness(const Instance& instance, const Decomposition& decomposition,
                                      const AlgoConfig& config, std::span<const int> perm, Rng& rng) {
  SmallSlackOutcome out;
  out.trace = small_slack_trace(instance, decomposition, config, perm);
  SmallSlackRun run(instance, decomposition, config);
  HoldingPolicy holder(&run);
  out.realized = run_trial(holder, instance, perm, rng, &out.events).realized;
  out.max_accept_prob = run.max_accept();
  out.match_time.assign(static_cast<std::size_t>(instance.n), -1);
  for (const ArrivalEvent& e : out.events) {
    if (e.matched >= 0) out.match_time[static_cast<std::size_t>(e.matched)] = e.t;
  }
  return out;
}

// ------------------------------------------------------------ lemma checks

double lemma61_bound(const Instance& instance, const SmallSlackTrace& trace, double delta_x) {
  double first = 0.0;
  double second = 0.0;
  for (int i = 0; i < instance.n; ++i) {
    for (int t = 0; t < instance.T; ++t) {
      const double v = instance.w(i, t) * trace.x_at_arrival(i, t);
      if (trace.in_e2(i, t)) {
        second += v;
      } else {
        first += v;
      }
    }
  }
  return (1.0 - delta_x) * (first + 0.5 * second);
}

namespace {

// 2w on L, w on E2 \ L, 0 on E1 \ L.
double hat_w(const Instance& instance, const Decomposition& d, const SmallSlackTrace& trace, int i, int t) {
  if (d.large_edges(i, t)) return 2.0 * instance.w(i, t);
  return trace.in_e2(i, t) ? instance.w(i, t) : 0.0;
}

}  // namespace

double lemma63_lhs(const Instance& instance, const Decomposition& decomposition, const SmallSlackTrace& trace) {
  double total = 0.0;
  for (int i = 0; i < instance.n; ++i) {
    for (int t = 0; t < instance.T; ++t) {
      const double hw = hat_w(instance, decomposition, trace, i, t);
      total += hw * trace.x_at_arrival(i, t);
      if (decomposition.large_edges(i, t)) total -= hw * decomposition.x_tilde_L(i, t);
    }
  }
  return total;
}

double lemma63_submod_sum(const Instance& instance, const Decomposition& decomposition,
                          const SmallSlackTrace& trace) {
  const auto n = static_cast<std::size_t>(instance.n);
  std::vector<double> r(n), xl(n), hw(n);
  std::vector<char> large(n);
  double total = 0.0;
  for (int t = 0; t < instance.T; ++t) {
    for (int i = 0; i < instance.n; ++i) {
      const auto iu = static_cast<std::size_t>(i);
      large[iu] = decomposition.large_edges(i, t) ? 1 : 0;
      r[iu] = large[iu] ? 0.0 : trace.r_hat(i, t);
      xl[iu] = decomposition.x_tilde_L(i, t);
      hw[iu] = hat_w(instance, decomposition, trace, i, t);
    }
    total += submod_value(instance, t, r, xl, large, hw);
  }
  return total;
}

LemmaCheck verify_lemma_6_2(const Instance& instance, const Decomposition& decomposition,
                            const SmallSlackTrace& trace, const OnlineOptProfile& profile,
                            const AlgoConfig& config) {
  LemmaCheck out;
  if (profile.value < 1.0 - config.eps_o) {
    out.applicability = Applicability::kNotApplicable;
    out.note = "OPT_online below 1 - eps_o";
    return out;
  }
  const SlacknessResult slack = solve_slackness(instance, decomposition, config.eps_o);
  if (slack.status != SlackStatus::kOptimal || slack.slack_value >= config.eps_s) {
    out.applicability = Applicability::kNotApplicable;
    out.note = "LP_slack not below eps_s";
    return out;
  }
  for (int i = 0; i < instance.n; ++i) {
    for (int t = 0; t < instance.T; ++t) {
      if (!decomposition.large_edges(i, t) && trace.in_e2(i, t)) out.lhs += instance.w(i, t) * profile.y_star(i, t);
    }
  }
  out.rhs = 0.5 - config.eps_o - std::pow(config.eps, 0.25) - config.eps_s -
            4.0 * std::sqrt(config.eps_s / config.eps_alg);
  out.holds = out.lhs >= out.rhs - 1e-9;
  return out;
}

LemmaCheck verify_lemma_6_3(const Instance& instance, const Decomposition& decomposition,
                            const SmallSlackTrace& trace, const OnlineOptProfile& profile,
                            const AlgoConfig& /*config*/) {
  LemmaCheck out;
  const double delta_x = decomposition.delta_x;
  for (int i = 0; i < instance.n; ++i) {
    if (decomposition.x_tilde_L.row_load(i) > delta_x + 1e-12) {
      out.applicability = Applicability::kNotApplicable;
      out.note = "row " + std::to_string(i) + " has large mass above delta_x";
      return out;
    }
  }
  out.lhs = lemma63_lhs(instance, decomposition, trace);
  double gain = 0.0;
  double loss = 0.0;
  for (int i = 0; i < instance.n; ++i) {
    for (int t = 0; t < instance.T; ++t) {
      const double w = instance.w(i, t);
      if (decomposition.large_edges(i, t)) {
        loss += 2.0 * w * std::max(0.0, decomposition.x_tilde_L(i, t) - profile.y_star(i, t));
      } else if (trace.in_e2(i, t)) {
        gain += w * profile.y_star(i, t);
      }
    }
  }
  out.rhs = 0.5 * ((1.0 - delta_x) * gain - loss);
  out.holds = out.lhs >= out.rhs - 1e-9 * std::max(1.0, std::abs(out.rhs));
  return out;
}

}  // namespace osm
