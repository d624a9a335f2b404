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

#include "osm/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "osm/errors.hpp"
#include "osm/lp_engine.hpp"

namespace osm {

Lemma41Witness lemma41_witness(const Instance& instance, const FracSolution& x, int i, double mu, double beta) {
  if (!(mu > 0.0 && mu < 0.5)) throw ParameterError("lemma41_witness: mu must lie in (0, 0.5)");
  if (!(beta > 0.5 + mu)) throw ParameterError("lemma41_witness: beta must exceed 0.5 + mu");
  if (i < 0 || i >= instance.n) throw ParameterError("lemma41_witness: row out of range");

  Lemma41Witness out;
  const double lp = lp_value_i(instance, x, i);
  const double lb = row_threshold(instance.w.row(i), x.x().row(i)).lb;
  if (!(lp > 0.0) || !(lb < (0.5 + mu) * lp)) return out;

  out.applicability = Applicability::kApplicable;
  out.delta_bound = std::sqrt(4.0 * mu / (beta - 0.5 - mu));
  const double cut = beta * lp;
  for (int t = 0; t < instance.T; ++t) {
    if (instance.w(i, t) > cut) {
      out.mass_above_beta += x(i, t);
      out.value_above_beta += x(i, t) * instance.w(i, t);
    }
  }
  const double tol = 1e-9;
  out.mass_ok = out.mass_above_beta <= out.delta_bound + tol;
  if (out.delta_bound < 1.0) {
    out.value_bound = (0.5 + mu) / (1.0 - out.delta_bound) * lp;
    out.value_ok = out.value_above_beta <= out.value_bound + tol * std::max(1.0, lp);
  } else {
    out.value_bound = INFINITY;
    out.value_ok = true;
  }
  out.holds = out.mass_ok && out.value_ok;
  return out;
}

EdgeMask large_edge_set(const Instance& instance, const FracSolution& x_tilde, double alpha) {
  EdgeMask large(instance.n, instance.T);
  for (int i = 0; i < instance.n; ++i) {
    const double cut = alpha * lp_value_i(instance, x_tilde, i);
    for (int t = 0; t < instance.T; ++t) {
      const double w = instance.w(i, t);
      if (w > 0.0 && w >= cut) large.set(i, t);
    }
  }
  return large;
}

std::vector<std::string> decomposition_failures(const Instance& instance, const FracSolution& a,
                                                const Decomposition& d) {
  std::vector<std::string> fails;
  const double root = std::pow(d.gamma, 0.25);
  const double tol = 1e-9;
  auto fail = [&](auto&&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    fails.push_back(os.str());
  };
  for (int i = 0; i < instance.n; ++i) {
    for (int t = 0; t < instance.T; ++t) {
      if (d.x_tilde(i, t) > a(i, t) + tol) fail("x_tilde exceeds a at (", i, ",", t, ")");
      const double expect = d.large_edges(i, t) ? d.x_tilde(i, t) : 0.0;
      if (d.x_tilde_L(i, t) != expect) fail("x_tilde_L differs from x_tilde restricted to L at (", i, ",", t, ")");
    }
  }
  for (int i : d.pruned_set) {
    const double lp = lp_value_i(instance, d.x_tilde, i);
    if (!(lp > 0.0)) continue;
    const double lp_large = lp_value_i(instance, d.x_tilde_L, i);
    if (d.x_tilde_L.row_load(i) > root + tol) fail("row ", i, " large mass ", d.x_tilde_L.row_load(i), " exceeds ", root);
    const double lo = (0.5 - (d.alpha + 2.0) * root) * lp;
    const double hi = (0.5 + root) * lp;
    if (lp_large < lo - tol * lp || lp_large > hi + tol * lp) {
      fail("row ", i, " large value ", lp_large, " outside [", lo, ", ", hi, "]");
    }
  }
  const double total_a = lp_value(instance, a);
  const double total_tilde = lp_value(instance, d.x_tilde);
  if (total_tilde < (1.0 - root) * total_a - tol * std::max(1.0, total_a)) {
    fail("LP(x_tilde) ", total_tilde, " below ", (1.0 - root) * total_a);
  }
  return fails;
}

Decomposition decompose(const Instance& instance, const FracSolution& a, double gamma, double alpha) {
  Decomposition d;
  d.gamma = gamma;
  d.alpha = alpha;
  d.delta_x = std::pow(gamma, 0.25);

  const ThresholdProfile prof = threshold_profile(instance, a);
  const double keep = 0.5 + std::pow(gamma, 0.75);
  Matrix xt(instance.n, instance.T);
  for (int i = 0; i < instance.n; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    if (prof.lp[iu] > 0.0 && prof.lb[iu] < keep * prof.lp[iu]) {
      d.pruned_set.push_back(i);
      for (int t = 0; t < instance.T; ++t) xt(i, t) = a(i, t);
    }
  }
  d.x_tilde = FracSolution(std::move(xt));
  d.large_edges = large_edge_set(instance, d.x_tilde, alpha);
  Matrix xl(instance.n, instance.T);
  for (int i = 0; i < instance.n; ++i) {
    for (int t = 0; t < instance.T; ++t) {
      if (d.large_edges(i, t)) xl(i, t) = d.x_tilde(i, t);
    }
  }
  d.x_tilde_L = FracSolution(std::move(xl));

  d.premises_hold = prof.lb_total() <= (0.5 + gamma) * prof.lp_total() && gamma <= 1e-4 && alpha >= 1.0;
  auto fails = decomposition_failures(instance, a, d);
  if (!fails.empty()) {
    if (d.premises_hold) {
      std::ostringstream dump;
      dump << "decomposition invariant broken (gamma=" << gamma << ", alpha=" << alpha << "):";
      for (const auto& f : fails) dump << "\n  " << f;
      throw InvariantViolation(dump.str());
    }
    for (auto& f : fails) d.warnings.push_back(std::move(f));
  }
  return d;
}

}  // namespace osm
