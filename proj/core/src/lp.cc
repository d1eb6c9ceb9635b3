// Copyright 2026 The mmx Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mmx/lp.h"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "mmx/errors.h"

namespace mmx {
namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kDegeneracyTol = 1e-9;

}  // namespace

LpResult SolveStandardFormLp(const Eigen::MatrixXd& constraints,
                             const Eigen::VectorXd& rhs,
                             const Eigen::VectorXd& objective, int max_iters) {
  const int rows = static_cast<int>(constraints.rows());
  const int vars = static_cast<int>(constraints.cols());
  if (rhs.size() != rows || objective.size() != vars) {
    throw SolverFailure("LP dimensions are inconsistent");
  }
  if ((rhs.array() < 0.0).any()) {
    throw SolverFailure("LP right-hand side must be nonnegative");
  }
  if (max_iters < 0) max_iters = 50 * (rows + vars) + 1000;

  // Columns: [structural | slack | rhs]; last row holds reduced costs.
  const int cols = vars + rows;
  Eigen::MatrixXd tab = Eigen::MatrixXd::Zero(rows + 1, cols + 1);
  tab.topLeftCorner(rows, vars) = constraints;
  tab.block(0, vars, rows, rows).setIdentity();
  tab.col(cols).head(rows) = rhs;
  tab.row(rows).head(vars) = -objective.transpose();

  std::vector<int> basis(rows);
  for (int i = 0; i < rows; ++i) basis[i] = vars + i;

  int iter = 0;
  for (;; ++iter) {
    int enter = -1;
    for (int j = 0; j < cols; ++j) {
      if (tab(rows, j) < -kPivotTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    if (iter >= max_iters) {
      std::ostringstream msg;
      msg << "simplex method did not converge in " << max_iters
          << " pivots (" << rows << " rows, " << vars
          << " columns, objective " << tab(rows, cols) << ")";
      throw SolverFailure(msg.str());
    }
    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < rows; ++i) {
      const double a = tab(i, enter);
      if (a <= kPivotTol) continue;
      const double ratio = tab(i, cols) / a;
      const bool strictly_better = leave < 0 || ratio < best_ratio - kPivotTol;
      const bool tie_lower_index = leave >= 0 &&
                                   std::abs(ratio - best_ratio) <= kPivotTol &&
                                   basis[i] < basis[leave];
      if (strictly_better || tie_lower_index) {
        best_ratio = std::min(best_ratio, ratio);
        leave = i;
      }
    }
    if (leave < 0) throw SolverFailure("LP is unbounded");
    tab.row(leave) /= tab(leave, enter);
    for (int i = 0; i <= rows; ++i) {
      if (i == leave) continue;
      const double factor = tab(i, enter);
      if (factor != 0.0) tab.row(i) -= factor * tab.row(leave);
    }
    basis[leave] = enter;
  }

  LpResult result;
  result.iterations = iter;
  result.primal = Eigen::VectorXd::Zero(vars);
  std::vector<bool> is_basic(cols, false);
  for (int i = 0; i < rows; ++i) {
    is_basic[basis[i]] = true;
    const double value = tab(i, cols);
    if (value <= kDegeneracyTol) result.primal_degenerate = true;
    if (basis[i] < vars) result.primal[basis[i]] = std::max(0.0, value);
  }
  for (int j = 0; j < cols; ++j) {
    if (!is_basic[j] && tab(rows, j) <= kDegeneracyTol) {
      result.dual_degenerate = true;
    }
  }
  result.dual = tab.row(rows).segment(vars, rows).transpose().cwiseMax(0.0);
  result.objective = tab(rows, cols);
  return result;
}

}  // namespace mmx
