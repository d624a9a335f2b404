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

#ifndef OSM_SIMPLEX_HPP_
#define OSM_SIMPLEX_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace osm {

enum class Sense { kLessEq, kGreaterEq, kEqual };

// maximize c.x subject to rows, x >= 0. Dense storage.
struct LinearProgram {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<Sense> senses;
  std::vector<double> rhs;

  void add_row(std::vector<double> coeffs, Sense sense, double b);
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
  // One dual per row, sign convention of max c.x s.t. Ax (<=,>=,=) b:
  // nonnegative on <= rows, nonpositive on >= rows.
  std::vector<double> duals;
  int iterations = 0;
  bool used_bland = false;
};

struct SimplexOptions {
  double pivot_tol = 1e-10;
  double opt_tol = 1e-10;
  double feas_tol = 1e-9;
  int max_iterations = 0;  // 0 = 50 * (rows + cols) + 1000
};

class LpNumericalFailure : public std::runtime_error {
 public:
  LpNumericalFailure(const std::string& what, std::vector<int> basis)
      : std::runtime_error(what), basis_(std::move(basis)) {}
  const std::vector<int>& last_basis() const { return basis_; }

 private:
  std::vector<int> basis_;
};

// Two-phase primal simplex with Dantzig pricing. Falls back to Bland's rule
// after 10 * (rows + cols) consecutive degenerate pivots.
LpResult solve_lp(const LinearProgram& lp, const SimplexOptions& options = {});

}  // namespace osm

#endif  // OSM_SIMPLEX_HPP_
