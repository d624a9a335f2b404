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

#include "osm/lp_engine.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "osm/decomposition.hpp"
#include "osm/errors.hpp"

namespace osm {
namespace {

struct EdgeIndex {
  std::vector<std::pair<int, int>> edges;  // (i, t)
};

// Edges that can carry mass: positive weight and positive probability.
EdgeIndex active_edges(const Instance& instance) {
  EdgeIndex idx;
  for (int i = 0; i < instance.n; ++i) {
    for (int t = 0; t < instance.T; ++t) {
      if (instance.w(i, t) > 0.0 && instance.p[static_cast<std::size_t>(t)] > 0.0) idx.edges.emplace_back(i, t);
    }
  }
  return idx;
}

// Adds q_i <= 1 and q_t <= p_t rows over the active edges.
void add_polytope_rows(const Instance& instance, const EdgeIndex& idx, LinearProgram& lp) {
  const int m = static_cast<int>(idx.edges.size());
  for (int i = 0; i < instance.n; ++i) {
    std::vector<double> row(static_cast<std::size_t>(m), 0.0);
    bool any = false;
    for (int e = 0; e < m; ++e) {
      if (idx.edges[static_cast<std::size_t>(e)].first == i) {
        row[static_cast<std::size_t>(e)] = 1.0;
        any = true;
      }
    }
    if (any) lp.add_row(std::move(row), Sense::kLessEq, 1.0);
  }
  for (int t = 0; t < instance.T; ++t) {
    std::vector<double> row(static_cast<std::size_t>(m), 0.0);
    bool any = false;
    for (int e = 0; e < m; ++e) {
      if (idx.edges[static_cast<std::size_t>(e)].second == t) {
        row[static_cast<std::size_t>(e)] = 1.0;
        any = true;
      }
    }
    if (any) lp.add_row(std::move(row), Sense::kLessEq, instance.p[static_cast<std::size_t>(t)]);
  }
}

double dual_objective(const LinearProgram& lp, const LpResult& res) {
  double v = 0.0;
  for (std::size_t r = 0; r < lp.rhs.size(); ++r) v += lp.rhs[r] * res.duals[r];
  return v;
}

FracSolution to_solution(const Instance& instance, const EdgeIndex& idx, const std::vector<double>& x) {
  Matrix out(instance.n, instance.T);
  for (std::size_t e = 0; e < idx.edges.size(); ++e) {
    out(idx.edges[e].first, idx.edges[e].second) = x[e];
  }
  return FracSolution(std::move(out));
}

}  // namespace

ExAnteResult solve_ex_ante(const Instance& instance) {
  require_valid(instance);
  const EdgeIndex idx = active_edges(instance);
  LinearProgram lp;
  lp.num_vars = static_cast<int>(idx.edges.size());
  for (const auto& [i, t] : idx.edges) lp.objective.push_back(instance.w(i, t));
  add_polytope_rows(instance, idx, lp);
  const LpResult res = solve_lp(lp);
  if (res.status != LpStatus::kOptimal) throw LpNumericalFailure("ex-ante LP not solved to optimality", {});
  ExAnteResult out;
  out.solution = to_solution(instance, idx, res.x);
  out.value = lp_value(instance, out.solution);
  out.dual_value = dual_objective(lp, res);
  return out;
}

double lp_value_i(const Instance& instance, const FracSolution& x, int i) {
  double v = 0.0;
  for (int t = 0; t < instance.T; ++t) v += instance.w(i, t) * x(i, t);
  return v;
}

double lp_value(const Instance& instance, const FracSolution& x) {
  double v = 0.0;
  for (int i = 0; i < instance.n; ++i) v += lp_value_i(instance, x, i);
  return v;
}

double ThresholdProfile::lb_total() const { return std::accumulate(lb.begin(), lb.end(), 0.0); }
double ThresholdProfile::lp_total() const { return std::accumulate(lp.begin(), lp.end(), 0.0); }

namespace {

struct WeightGroup {
  double weight;
  double survive;  // product of (1 - x) over the group
  double value;    // sum of x * w over the group
};

std::vector<WeightGroup> ascending_groups(std::span<const double> w, std::span<const double> x) {
  std::vector<std::size_t> order;
  for (std::size_t t = 0; t < w.size(); ++t) {
    if (x[t] > 0.0) order.push_back(t);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return w[a] < w[b]; });
  std::vector<WeightGroup> groups;
  for (std::size_t t : order) {
    if (groups.empty() || groups.back().weight != w[t]) groups.push_back({w[t], 1.0, 0.0});
    groups.back().survive *= 1.0 - x[t];
    groups.back().value += x[t] * w[t];
  }
  return groups;
}

}  // namespace

double row_threshold_value(std::span<const double> w, std::span<const double> x, double tau) {
  const auto groups = ascending_groups(w, x);
  double value = 0.0;
  for (auto g = groups.rbegin(); g != groups.rend(); ++g) {
    if (g->weight < tau) break;
    value = g->value + g->survive * value;
  }
  return value;
}

RowThreshold row_threshold(std::span<const double> w, std::span<const double> x) {
  const auto groups = ascending_groups(w, x);
  // suffix[k]: value of threshold groups[k].weight.
  std::vector<double> suffix(groups.size() + 1, 0.0);
  for (std::size_t k = groups.size(); k-- > 0;) suffix[k] = groups[k].value + groups[k].survive * suffix[k + 1];

  // Threshold 0 accepts every group; it coincides with the smallest group
  // unless that group has weight 0.
  RowThreshold best{groups.empty() ? 0.0 : suffix[0], 0.0};
  for (std::size_t k = 0; k < groups.size(); ++k) {
    if (suffix[k] > best.lb * (1.0 + 1e-12) + 1e-300) best = {suffix[k], groups[k].weight};
  }
  return best;
}

ThresholdProfile threshold_profile(const Instance& instance, const FracSolution& x) {
  ThresholdProfile prof;
  for (int i = 0; i < instance.n; ++i) {
    const RowThreshold rt = row_threshold(instance.w.row(i), x.x().row(i));
    prof.lb.push_back(rt.lb);
    prof.tau.push_back(rt.tau);
    prof.lp.push_back(lp_value_i(instance, x, i));
  }
  return prof;
}

double slackness_objective(const Instance& instance, const FracSolution& x_tilde_L, const EdgeMask& large,
                           const FracSolution& y) {
  double v = 0.0;
  for (int i = 0; i < instance.n; ++i) {
    for (int t = 0; t < instance.T; ++t) {
      const double p = instance.p[static_cast<std::size_t>(t)];
      if (p <= 0.0 || instance.w(i, t) <= 0.0) continue;
      const double w = instance.w(i, t);
      const double xl = x_tilde_L(i, t);
      v += w * xl * (1.0 - y(i, t) / p);
      if (large(i, t)) v += w * y(i, t) * (1.0 - xl / p);
    }
  }
  return v;
}

SlacknessResult solve_slackness(const Instance& instance, const FracSolution& x_tilde_L, const EdgeMask& large,
                                double eps_o) {
  require_valid(instance);
  const EdgeIndex idx = active_edges(instance);
  LinearProgram lp;
  lp.num_vars = static_cast<int>(idx.edges.size());
  double constant = 0.0;
  std::vector<double> value_row;
  for (const auto& [i, t] : idx.edges) {
    const double w = instance.w(i, t);
    const double p = instance.p[static_cast<std::size_t>(t)];
    const double xl = x_tilde_L(i, t);
    constant += w * xl;
    lp.objective.push_back(large(i, t) ? w * (1.0 - 2.0 * xl / p) : 0.0);
    value_row.push_back(w);
  }
  add_polytope_rows(instance, idx, lp);
  lp.add_row(value_row, Sense::kGreaterEq, 1.0 - eps_o);

  SlacknessResult out;
  out.opt_constraint_rhs = 1.0 - eps_o;
  const LpResult res = solve_lp(lp);
  if (res.status == LpStatus::kInfeasible) {
    out.status = SlackStatus::kInfeasible;
    out.y_o = FracSolution::zeros(instance.n, instance.T);
    return out;
  }
  if (res.status != LpStatus::kOptimal) throw LpNumericalFailure("slackness LP unbounded", {});
  out.status = SlackStatus::kOptimal;
  out.y_o = to_solution(instance, idx, res.x);
  out.slack_value = constant + res.objective;
  out.dual_value = constant + dual_objective(lp, res);
  return out;
}

SlacknessResult solve_slackness(const Instance& instance, const Decomposition& decomposition, double eps_o) {
  return solve_slackness(instance, decomposition.x_tilde_L, decomposition.large_edges, eps_o);
}

double submod_value(double p_t, std::span<const double> r_col, std::span<const double> xl_col,
                    std::span<const char> large_col, std::span<const double> hat_w_col) {
  const std::size_t n = hat_w_col.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return hat_w_col[a] > hat_w_col[b]; });
  double capacity = p_t;
  double value = 0.0;
  for (std::size_t i : order) {
    if (hat_w_col[i] <= 0.0 || capacity <= 0.0) break;
    const double cap = large_col[i] ? xl_col[i] : r_col[i];
    const double z = std::min(std::max(cap, 0.0), capacity);
    value += hat_w_col[i] * z;
    capacity -= z;
  }
  double baseline = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (large_col[i]) baseline += hat_w_col[i] * xl_col[i];
  }
  return value - baseline;
}

}  // namespace osm
