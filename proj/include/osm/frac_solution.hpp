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

#ifndef OSM_FRAC_SOLUTION_HPP_
#define OSM_FRAC_SOLUTION_HPP_

#include <string>
#include <vector>

#include "osm/instance.hpp"
#include "osm/matrix.hpp"

namespace osm {

inline constexpr double kFeasTol = 1e-9;

// Fractional matching x with cached row loads q_i(x) and column loads q_t(x).
// Entries in [-kFeasTol, 0) are clamped to zero on construction.
class FracSolution {
 public:
  FracSolution() = default;
  explicit FracSolution(Matrix x);
  static FracSolution zeros(int n, int T) { return FracSolution(Matrix(n, T)); }

  const Matrix& x() const { return x_; }
  double operator()(int i, int t) const { return x_(i, t); }
  int rows() const { return x_.rows(); }
  int cols() const { return x_.cols(); }

  double row_load(int i) const { return row_load_[static_cast<std::size_t>(i)]; }
  double col_load(int t) const { return col_load_[static_cast<std::size_t>(t)]; }
  const std::vector<double>& row_loads() const { return row_load_; }
  const std::vector<double>& col_loads() const { return col_load_; }

 private:
  Matrix x_;
  std::vector<double> row_load_;
  std::vector<double> col_load_;
};

// Membership in the ex-ante polytope P up to tol. Also rejects entries below
// -tol and entries on edges with p_t = 0.
bool in_polytope(const Instance& instance, const FracSolution& x, double tol = kFeasTol);

// Human-readable reason for the first polytope violation, empty if none.
std::string polytope_violation(const Instance& instance, const FracSolution& x,
                               double tol = kFeasTol);

}  // namespace osm

#endif  // OSM_FRAC_SOLUTION_HPP_
