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

#ifndef MMX_LP_H_
#define MMX_LP_H_

#include <Eigen/Dense>

namespace mmx {

struct LpResult {
  Eigen::VectorXd primal;  // optimal t
  Eigen::VectorXd dual;    // optimal multipliers of the <= rows
  double objective = 0.0;
  int iterations = 0;
  // Some basic variable sits at zero in the final basis.
  bool primal_degenerate = false;
  // Some nonbasic reduced cost is zero in the final basis.
  bool dual_degenerate = false;
};

// Dense tableau simplex for
//   maximize c^T t  subject to  B t <= b,  t >= 0,
// with b >= 0 so the slack basis is feasible. Pivoting follows Bland's rule
// (lowest-index entering column, lowest-index leaving variable on ratio
// ties), which cannot cycle. Throws SolverFailure on unboundedness or when
// `max_iters` pivots do not reach optimality.
LpResult SolveStandardFormLp(const Eigen::MatrixXd& constraints,
                             const Eigen::VectorXd& rhs,
                             const Eigen::VectorXd& objective,
                             int max_iters = -1);

}  // namespace mmx

#endif  // MMX_LP_H_
