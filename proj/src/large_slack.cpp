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
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "osm/algorithms.hpp"
#include "osm/errors.hpp"

namespace osm {

namespace {

Matrix scaled_sum(const Matrix& a, double sa, const Matrix& b, double sb) {
  Matrix out(a.rows(), a.cols());
  for (std::size_t k = 0; k < out.data().size(); ++k) out.data()[k] = sa * a.data()[k] + sb * b.data()[k];
  return out;
}

// Lowers y_tilde_L column by column, most valuable
// entries first, until q_t does not exceed q_t(x_tilde_L).
Matrix reduce_to_columns(const Instance& instance, const FracSolution& y_large, const FracSolution& x_large) {
  Matrix b = y_large.x();
  std::vector<int> rows(static_cast<std::size_t>(instance.n));
  for (int t = 0; t < instance.T; ++t) {
    double excess = y_large.col_load(t) - x_large.col_load(t);
    if (!(excess > 0.0)) continue;
    std::iota(rows.begin(), rows.end(), 0);
    std::stable_sort(rows.begin(), rows.end(), [&](int a, int c) { return instance.w(a, t) > instance.w(c, t); });
    for (int i : rows) {
      if (!(excess > 0.0)) break;
      const double cut = std::min(excess, b(i, t));
      b(i, t) -= cut;
      excess -= cut;
    }
  }
  return b;
}

}  // namespace

LargeSlackResult construct_large_slackness_solution(const Instance& instance, const Decomposition& decomposition,
                                                    const SlacknessResult& slackness, const AlgoConfig& config) {
  validate_config(config);
  if (slackness.status != SlackStatus::kOptimal) throw ParameterError("large slack: slackness LP was infeasible");
  if (slackness.slack_value < config.eps_s) {
    throw ParameterError("large slack: LP_slack value " + std::to_string(slackness.slack_value) + " below eps_s " +
                         std::to_string(config.eps_s));
  }
  LargeSlackResult out;
  const bool theory_regime = config.eps <= 1e-4 && config.eps_o <= 1e-4 && config.eps_o >= 3.0 * config.eps;

  auto add = [&](std::string name, FracSolution z) {
    Candidate c;
    c.name = std::move(name);
    c.feasible = in_polytope(instance, z);
    if (!c.feasible) {
      const std::string why = polytope_violation(instance, z);
      if (theory_regime) throw InvariantViolation("large slack: candidate " + c.name + " outside P: " + why);
      out.warnings.push_back("candidate " + c.name + " outside P, dropped: " + why);
    }
    c.lb = threshold_profile(instance, z).lb_total();
    c.lp = lp_value(instance, z);
    c.z = std::move(z);
    out.candidates.push_back(std::move(c));
  };
  auto finish = [&]() {
    const Candidate* best = nullptr;
    for (const Candidate& c : out.candidates) {
      if (c.feasible && (!best || c.lb > best->lb)) best = &c;
    }
    if (!best) throw InvariantViolation("large slack: no feasible candidate");
    out.z = best->z;
    out.lb = best->lb;
    out.chosen = best->name;
  };

  const FracSolution& y_o = slackness.y_o;
  add("y_o", y_o);
  if (out.candidates.front().lb >= 0.5 + config.eps) {
    out.shortcut = true;
    finish();
    return out;
  }

  const Decomposition dy = decompose(instance, y_o, config.eps_o, 1.0);
  for (const auto& w : dy.warnings) out.warnings.push_back("decomposition of y_o: " + w);
  const FracSolution& xt = decomposition.x_tilde;
  const FracSolution& xl = decomposition.x_tilde_L;
  const FracSolution& yt = dy.x_tilde;
  const FracSolution& yl = dy.x_tilde_L;

  // Which of the two slack components is large.
  for (int i = 0; i < instance.n; ++i) {
    for (int t = 0; t < instance.T; ++t) {
      const double p = instance.p[static_cast<std::size_t>(t)];
      if (!(p > 0.0)) continue;
      const double w = instance.w(i, t);
      out.cross_mass += w * xl(i, t) * (1.0 - yl(i, t) / p) + w * yl(i, t) * (1.0 - xl(i, t) / p);
    }
    const double lp_x = lp_value_i(instance, xt, i);
    const double lp_y = lp_value_i(instance, yt, i);
    if (2.0 * lp_x < lp_y) out.row_gain += lp_y - lp_x;
  }
  const double root_o = std::pow(config.eps_o, 0.25);
  out.branch_bar = config.eps_s - root_o;
  out.cross_mass_large = out.cross_mass >= 0.6 * out.branch_bar;
  out.row_gain_large = out.row_gain >= 0.2 * out.branch_bar;
  const double denom = 1.0 - decomposition.delta_x - root_o;
  out.case1_bar = denom > 0.0 ? (0.5 + config.eps) / denom : std::numeric_limits<double>::infinity();

  // Averaged solutions and the capped large part.
  const Matrix a_tilde = scaled_sum(xt.x(), 0.5, yt.x(), 0.5);
  const FracSolution a_large(scaled_sum(xl.x(), 0.5, yl.x(), 0.5));
  Matrix a_bar(instance.n, instance.T);
  for (int t = 0; t < instance.T; ++t) {
    const double q = a_large.col_load(t);
    if (!(q > 0.0)) continue;
    const double factor = std::min(2.0, instance.p[static_cast<std::size_t>(t)] / q);
    for (int i = 0; i < instance.n; ++i) a_bar(i, t) = factor * a_large(i, t);
  }
  add("a_bar", FracSolution(a_bar));
  out.a_case1 = out.candidates.back().lp >= out.case1_bar;

  if (!out.a_case1) {
    // Random split of the offline side: U1 keeps only large mass and
    // absorbs the overlap with U2, U2 keeps everything else.
    std::vector<char> in_first(static_cast<std::size_t>(instance.n));
    FracSolution best_split;
    double best_lb = -1.0;
    for (int k = 0; k < config.partition_samples; ++k) {
      Rng rng = Rng::stream(config.seed, static_cast<std::uint64_t>(k));
      for (auto& f : in_first) f = rng.bernoulli(0.5) ? 1 : 0;
      Matrix a(instance.n, instance.T);
      for (int t = 0; t < instance.T; ++t) {
        const double p = instance.p[static_cast<std::size_t>(t)];
        if (!(p > 0.0)) continue;
        double mass1 = 0.0;
        double mass2 = 0.0;
        for (int j = 0; j < instance.n; ++j) (in_first[static_cast<std::size_t>(j)] ? mass1 : mass2) += a_large(j, t);
        for (int i = 0; i < instance.n; ++i) {
          const double own = a_large(i, t);
          if (in_first[static_cast<std::size_t>(i)]) {
            a(i, t) = own + mass2 * own / p;
          } else {
            a(i, t) = a_tilde(i, t) - mass1 * own / p;
          }
        }
      }
      FracSolution cand = FracSolution(std::move(a));
      const double lb = threshold_profile(instance, cand).lb_total();
      if (lb > best_lb) {
        best_lb = lb;
        best_split = std::move(cand);
      }
    }
    add("a_split", std::move(best_split));
  }

  // Second construction: b_tilde, b_bar and b.
  const FracSolution b_tilde(reduce_to_columns(instance, yl, xl));
  Matrix b_bar = scaled_sum(xl.x(), 1.0, yl.x(), 1.0);
  for (std::size_t k = 0; k < b_bar.data().size(); ++k) b_bar.data()[k] -= b_tilde.x().data()[k];
  add("b_bar", FracSolution(std::move(b_bar)));
  out.b_case1 = out.candidates.back().lp >= out.case1_bar;
  if (!out.b_case1) {
    Matrix b = scaled_sum(xt.x(), 1.0 - root_o, xl.x(), -(1.0 - root_o));
    for (std::size_t k = 0; k < b.data().size(); ++k) b.data()[k] += b_tilde.x().data()[k];
    add("b", FracSolution(std::move(b)));
  }
  finish();
  return out;
}

}  // namespace osm
