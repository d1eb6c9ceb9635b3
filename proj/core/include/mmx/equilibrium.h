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

#ifndef MMX_EQUILIBRIUM_H_
#define MMX_EQUILIBRIUM_H_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmx/games.h"
#include "mmx/simplex.h"

namespace mmx {

inline constexpr double kDefaultSupportThreshold = 1e-9;
inline constexpr double kDefaultKktTol = 1e-7;

enum class KktVerdict { kPassStrict, kPassDegenerate, kFail };
std::string ToString(KktVerdict verdict);

struct KktReport {
  std::vector<int> support_x;
  std::vector<int> support_y;
  // Worst |df/dx_i - sum_j x_j df/dx_j| over supported i (and the y analog).
  double max_equality_residual = 0.0;
  // Smallest off-support margin: df/dx_i - avg for the min player,
  // avg - df/dy_j for the max player. +infinity when both supports are full.
  double min_slack = 0.0;
  KktVerdict verdict = KktVerdict::kFail;
};

// Classifies (x, y) against the first-order conditions on the simplices.
// fail: residual > tol or some slack < -tol; pass_degenerate: equalities hold
// but min_slack <= tol; pass_strict otherwise.
KktReport CheckKkt(const GameOracle& game, const SimplexPoint& x,
                   const SimplexPoint& y, double tol = kDefaultKktTol,
                   double support_threshold = kDefaultSupportThreshold);

// {"verdict", "max_equality_residual", "min_slack", "support_x",
// "support_y"}; an infinite min_slack is written as null.
nlohmann::json ToJson(const KktReport& report);

struct BilinearSolution {
  SimplexPoint x;
  SimplexPoint y;
  double value = 0.0;
  // Best effort: true when the optimal basis is primal and dual
  // nondegenerate, which implies both optimal strategies are unique.
  bool unique_hint = false;
  int lp_iterations = 0;
};

// Exact equilibrium of min_x max_y x^T A y through the LP pair
// max 1^T t s.t. M^T t <= 1, t >= 0 (and its dual), with M = A + shift > 0.
// The result is verified with CheckKkt at `tol`; throws SolverFailure if the
// LP stalls or the verification fails.
BilinearSolution SolveBilinear(const Matrix& payoff, double tol = 1e-9);

struct GapResult {
  double value = 0.0;
  // Set when an inner solve hit its iteration cap.
  bool approximate = false;
  // Norm of the projected-gradient mapping at the inner solutions (0 for
  // closed-form cases).
  double inner_residual = 0.0;
};

inline constexpr int kGapInnerMaxIters = 20000;
inline constexpr double kGapInnerTol = 1e-9;

// max_{y'} f(x, y') - min_{x'} f(x', y). Closed forms for the bilinear and
// regularized bilinear families; projected gradient with backtracking
// otherwise.
GapResult DualityGap(const GameOracle& game, const Vector& x, const Vector& y);

}  // namespace mmx

#endif  // MMX_EQUILIBRIUM_H_
