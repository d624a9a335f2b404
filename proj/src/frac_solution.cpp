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

#include "osm/frac_solution.hpp"

#include <sstream>
#include <string>
#include <utility>

namespace osm {

FracSolution::FracSolution(Matrix x) : x_(std::move(x)) {
  row_load_.assign(static_cast<std::size_t>(x_.rows()), 0.0);
  col_load_.assign(static_cast<std::size_t>(x_.cols()), 0.0);
  for (int i = 0; i < x_.rows(); ++i) {
    for (int t = 0; t < x_.cols(); ++t) {
      double& v = x_(i, t);
      if (v < 0.0 && v >= -kFeasTol) v = 0.0;
      row_load_[static_cast<std::size_t>(i)] += v;
      col_load_[static_cast<std::size_t>(t)] += v;
    }
  }
}

std::string polytope_violation(const Instance& instance, const FracSolution& x, double tol) {
  std::ostringstream why;
  if (x.rows() != instance.n || x.cols() != instance.T) return "shape mismatch";
  for (int i = 0; i < instance.n; ++i) {
    for (int t = 0; t < instance.T; ++t) {
      if (x(i, t) < -tol) {
        why << "x[" << i << "][" << t << "] = " << x(i, t) << " negative";
        return why.str();
      }
    }
    if (x.row_load(i) > 1.0 + tol) {
      why << "row " << i << " load " << x.row_load(i) << " exceeds 1";
      return why.str();
    }
  }
  for (int t = 0; t < instance.T; ++t) {
    const double cap = instance.p[static_cast<std::size_t>(t)];
    if (x.col_load(t) > cap + tol) {
      why << "column " << t << " load " << x.col_load(t) << " exceeds p=" << cap;
      return why.str();
    }
  }
  return {};
}

bool in_polytope(const Instance& instance, const FracSolution& x, double tol) {
  return polytope_violation(instance, x, tol).empty();
}

}  // namespace osm
