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

#include "osm/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "osm/errors.hpp"

namespace osm {

void LinearProgram::add_row(std::vector<double> coeffs, Sense sense, double b) {
  if (static_cast<int>(coeffs.size()) != num_vars) {
    throw ParameterError("LinearProgram::add_row: coefficient count mismatch");
  }
  rows.push_back(std::move(coeffs));
  senses.push_back(sense);
  rhs.push_back(b);
}

namespace {

class Tableau {
 public:
  Tableau(int m, int ncols) : m_(m), ncols_(ncols), data_(static_cast<std::size_t>(m + 1) * (ncols + 1), 0.0) {}

  double& at(int r, int c) { return data_[static_cast<std::size_t>(r) * (ncols_ + 1) + c]; }
  double at(int r, int c) const { return data_[static_cast<std::size_t>(r) * (ncols_ + 1) + c]; }
  double& rhs(int r) { return at(r, ncols_); }
  double& obj(int c) { return at(m_, c); }

  void pivot(int pr, int pc) {
    const double inv = 1.0 / at(pr, pc);
    for (int c = 0; c <= ncols_; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1.0;
    for (int r = 0; r <= m_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (int c = 0; c <= ncols_; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
  }

 private:
  int m_;
  int ncols_;
  std::vector<double> data_;
};

struct Solver {
  const SimplexOptions& opt;
  int m;
  int ncols;
  Tableau tab;
  std::vector<int> basis;
  std::vector<char> is_artificial;
  int iterations = 0;
  int max_iterations;
  int degenerate_run = 0;
  bool bland = false;

  void price(const std::vector<double>& cost) {
    for (int c = 0; c <= ncols; ++c) {
      double z = 0.0;
      for (int r = 0; r < m; ++r) z += cost[static_cast<std::size_t>(basis[static_cast<std::size_t>(r)])] * tab.at(r, c);
      tab.obj(c) = c < ncols ? z - cost[static_cast<std::size_t>(c)] : z;
    }
  }

  // Returns false if unbounded. Column c enters when its reduced cost is
  // below -opt_tol * scale[c].
  bool iterate(double opt_tol, const std::vector<double>& scale) {
    const int bland_after = 10 * (m + ncols);
    for (;;) {
      int enter = -1;
      double best = 0.0;
      for (int c = 0; c < ncols; ++c) {
        if (is_artificial[static_cast<std::size_t>(c)]) continue;
        const double d = tab.obj(c);
        if (d < -opt_tol * scale[static_cast<std::size_t>(c)] && d < best) {
          enter = c;
          best = d;
          if (bland) break;
        }
      }
      if (enter < 0) return true;

      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int r = 0; r < m; ++r) {
        const double a = tab.at(r, enter);
        if (a <= opt.pivot_tol) continue;
        const double ratio = std::max(0.0, tab.rhs(r)) / a;
        if (leave < 0 || ratio < best_ratio - 1e-12) {
          leave = r;
          best_ratio = ratio;
        } else if (ratio <= best_ratio + 1e-12) {
          const bool better = bland ? basis[static_cast<std::size_t>(r)] < basis[static_cast<std::size_t>(leave)]
                                    : a > tab.at(leave, enter);
          if (better) {
            leave = r;
            best_ratio = std::min(best_ratio, ratio);
          }
        }
      }
      if (leave < 0) return false;

      if (best_ratio <= opt.feas_tol) {
        if (++degenerate_run > bland_after) bland = true;
      } else {
        degenerate_run = 0;
      }
      if (++iterations > max_iterations) {
        throw LpNumericalFailure("simplex iteration cap exceeded", basis);
      }
      tab.pivot(leave, enter);
      basis[static_cast<std::size_t>(leave)] = enter;
    }
  }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp, const SimplexOptions& options) {
  const int n = lp.num_vars;
  const int m = static_cast<int>(lp.rows.size());
  if (static_cast<int>(lp.objective.size()) != n) throw ParameterError("solve_lp: objective size mismatch");

  // Normalize to nonnegative rhs.
  std::vector<double> sigma(static_cast<std::size_t>(m), 1.0);
  std::vector<Sense> sense(lp.senses);
  for (int r = 0; r < m; ++r) {
    if (lp.rhs[static_cast<std::size_t>(r)] < 0.0) {
      sigma[static_cast<std::size_t>(r)] = -1.0;
      if (sense[static_cast<std::size_t>(r)] == Sense::kLessEq) {
        sense[static_cast<std::size_t>(r)] = Sense::kGreaterEq;
      } else if (sense[static_cast<std::size_t>(r)] == Sense::kGreaterEq) {
        sense[static_cast<std::size_t>(r)] = Sense::kLessEq;
      }
    }
  }

  // Column layout: originals, then one slack/surplus per inequality row,
  // then one artificial per >= or = row.
  std::vector<int> slack_col(static_cast<std::size_t>(m), -1);
  std::vector<int> art_col(static_cast<std::size_t>(m), -1);
  int ncols = n;
  for (int r = 0; r < m; ++r) {
    if (sense[static_cast<std::size_t>(r)] != Sense::kEqual) slack_col[static_cast<std::size_t>(r)] = ncols++;
  }
  for (int r = 0; r < m; ++r) {
    if (sense[static_cast<std::size_t>(r)] != Sense::kLessEq) art_col[static_cast<std::size_t>(r)] = ncols++;
  }

  const int cap = options.max_iterations > 0 ? options.max_iterations : 50 * (m + ncols) + 1000;
  Solver s{options, m, ncols, Tableau(m, ncols), std::vector<int>(static_cast<std::size_t>(m)),
           std::vector<char>(static_cast<std::size_t>(ncols), 0), 0, cap};
  std::vector<int> unit_col(static_cast<std::size_t>(m));
  double max_b = 1.0;
  for (int r = 0; r < m; ++r) {
    const auto ru = static_cast<std::size_t>(r);
    for (int j = 0; j < n; ++j) s.tab.at(r, j) = sigma[ru] * lp.rows[ru][static_cast<std::size_t>(j)];
    s.tab.rhs(r) = sigma[ru] * lp.rhs[ru];
    max_b = std::max(max_b, std::abs(s.tab.rhs(r)));
    if (sense[ru] == Sense::kLessEq) {
      s.tab.at(r, slack_col[ru]) = 1.0;
      unit_col[ru] = slack_col[ru];
    } else {
      if (sense[ru] == Sense::kGreaterEq) s.tab.at(r, slack_col[ru]) = -1.0;
      s.tab.at(r, art_col[ru]) = 1.0;
      unit_col[ru] = art_col[ru];
    }
    s.basis[ru] = unit_col[ru];
  }

  LpResult result;

  // Phase I.
  bool any_artificial = false;
  std::vector<double> cost1(static_cast<std::size_t>(ncols), 0.0);
  for (int r = 0; r < m; ++r) {
    if (art_col[static_cast<std::size_t>(r)] >= 0) {
      cost1[static_cast<std::size_t>(art_col[static_cast<std::size_t>(r)])] = -1.0;
      any_artificial = true;
    }
  }
  if (any_artificial) {
    s.price(cost1);
    s.iterate(options.opt_tol, std::vector<double>(static_cast<std::size_t>(ncols), 1.0));
    if (-s.tab.obj(ncols) > options.feas_tol * max_b) {
      result.status = LpStatus::kInfeasible;
      result.iterations = s.iterations;
      return result;
    }
    for (int r = 0; r < m; ++r) {
      const auto ru = static_cast<std::size_t>(r);
      if (cost1[static_cast<std::size_t>(s.basis[ru])] >= 0) continue;
      for (int j = 0; j < ncols; ++j) {
        if (cost1[static_cast<std::size_t>(j)] < 0) continue;
        if (std::abs(s.tab.at(r, j)) > 1e-7) {
          s.tab.pivot(r, j);
          s.basis[ru] = j;
          break;
        }
      }
    }
    for (int j = 0; j < ncols; ++j) s.is_artificial[static_cast<std::size_t>(j)] = cost1[static_cast<std::size_t>(j)] < 0;
  }

  // Phase II.
  std::vector<double> cost2(static_cast<std::size_t>(ncols), 0.0);
  // Per-column scale: a relative test against the largest objective
  // coefficient would miss light edges next to very heavy ones.
  std::vector<double> scale(static_cast<std::size_t>(ncols), 1.0);
  for (int j = 0; j < n; ++j) {
    cost2[static_cast<std::size_t>(j)] = lp.objective[static_cast<std::size_t>(j)];
    scale[static_cast<std::size_t>(j)] = std::max(1.0, std::abs(lp.objective[static_cast<std::size_t>(j)]));
  }
  s.price(cost2);
  const bool bounded = s.iterate(options.opt_tol, scale);
  result.iterations = s.iterations;
  result.used_bland = s.bland;
  if (!bounded) {
    result.status = LpStatus::kUnbounded;
    return result;
  }

  result.status = LpStatus::kOptimal;
  result.x.assign(static_cast<std::size_t>(n), 0.0);
  for (int r = 0; r < m; ++r) {
    const int b = s.basis[static_cast<std::size_t>(r)];
    if (b < n) {
      double v = s.tab.rhs(r);
      if (v < 0.0 && v >= -options.feas_tol * max_b) v = 0.0;
      result.x[static_cast<std::size_t>(b)] = v;
    }
  }
  result.objective = 0.0;
  for (int j = 0; j < n; ++j) result.objective += lp.objective[static_cast<std::size_t>(j)] * result.x[static_cast<std::size_t>(j)];
  result.duals.assign(static_cast<std::size_t>(m), 0.0);
  for (int r = 0; r < m; ++r) {
    const auto ru = static_cast<std::size_t>(r);
    result.duals[ru] = sigma[ru] * s.tab.obj(unit_col[ru]);
  }
  return result;
}

}  // namespace osm
