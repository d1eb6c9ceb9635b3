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

#include "mmx/equilibrium.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mmx/dynamics.h"
#include "mmx/errors.h"
#include "mmx/lp.h"

namespace mmx {

std::string ToString(KktVerdict verdict) {
  switch (verdict) {
    case KktVerdict::kPassStrict:
      return "pass_strict";
    case KktVerdict::kPassDegenerate:
      return "pass_degenerate";
    case KktVerdict::kFail:
      return "fail";
  }
  return "unknown";
}

KktReport CheckKkt(const GameOracle& game, const SimplexPoint& x,
                   const SimplexPoint& y, double tol,
                   double support_threshold) {
  if (x.size() != game.dim_x() || y.size() != game.dim_y()) {
    throw InvalidInputError("KKT check: point dimensions do not match game");
  }
  const Vector gx = game.GradX(x.probs(), y.probs());
  const Vector gy = game.GradY(x.probs(), y.probs());
  const double avg_x = x.probs().dot(gx);
  const double avg_y = y.probs().dot(gy);

  KktReport report;
  report.min_slack = std::numeric_limits<double>::infinity();
  for (int i = 0; i < x.size(); ++i) {
    if (x[i] > support_threshold) {
      report.support_x.push_back(i);
      report.max_equality_residual =
          std::max(report.max_equality_residual, std::abs(gx[i] - avg_x));
    } else {
      report.min_slack = std::min(report.min_slack, gx[i] - avg_x);
    }
  }
  for (int j = 0; j < y.size(); ++j) {
    if (y[j] > support_threshold) {
      report.support_y.push_back(j);
      report.max_equality_residual =
          std::max(report.max_equality_residual, std::abs(gy[j] - avg_y));
    } else {
      report.min_slack = std::min(report.min_slack, avg_y - gy[j]);
    }
  }
  if (!(report.max_equality_residual <= tol) || report.min_slack < -tol) {
    report.verdict = KktVerdict::kFail;
  } else if (report.min_slack <= tol) {
    report.verdict = KktVerdict::kPassDegenerate;
  } else {
    report.verdict = KktVerdict::kPassStrict;
  }
  return report;
}

nlohmann::json ToJson(const KktReport& report) {
  nlohmann::json j;
  j["verdict"] = ToString(report.verdict);
  j["max_equality_residual"] = report.max_equality_residual;
  if (std::isfinite(report.min_slack)) {
    j["min_slack"] = report.min_slack;
  } else {
    j["min_slack"] = nullptr;
  }
  j["support_x"] = report.support_x;
  j["support_y"] = report.support_y;
  return j;
}

BilinearSolution SolveBilinear(const Matrix& payoff, double tol) {
  if (payoff.size() == 0 || !payoff.allFinite()) {
    throw InvalidGameError("bilinear solve needs a finite, non-empty matrix");
  }
  const int n = static_cast<int>(payoff.rows());
  const int m = static_cast<int>(payoff.cols());
  // Shift so every entry is >= 1; the game value moves by the same amount.
  const double shift = 1.0 - payoff.minCoeff();
  const Matrix shifted = payoff.array() + shift;

  const LpResult lp = SolveStandardFormLp(
      shifted.transpose(), Vector::Ones(m), Vector::Ones(n));
  const double total = lp.primal.sum();
  const double dual_total = lp.dual.sum();
  if (!(total > 0.0) || !(dual_total > 0.0)) {
    throw SolverFailure("degenerate LP solution for the bilinear game");
  }

  BilinearSolution sol{SimplexPoint(lp.primal / total),
                       SimplexPoint(lp.dual / dual_total), 0.0, false,
                       lp.iterations};
  sol.value = 1.0 / total - shift;
  sol.unique_hint = !lp.primal_degenerate && !lp.dual_degenerate;

  const auto game = MakeBilinear(payoff);
  const KktReport kkt = CheckKkt(*game, sol.x, sol.y, tol);
  if (kkt.verdict == KktVerdict::kFail) {
    std::ostringstream msg;
    msg << "LP solution fails the KKT check (residual "
        << kkt.max_equality_residual << ", min slack " << kkt.min_slack
        << ") after " << lp.iterations << " pivots";
    throw SolverFailure(msg.str());
  }
  return sol;
}

namespace {

// Maximizes phi over the simplex by projected gradient ascent with
// backtracking, starting from `start`. Returns the maximizer estimate.
struct InnerSolve {
  Vector point;
  double value = 0.0;
  double residual = 0.0;
  bool capped = false;
};

template <typename Value, typename Grad>
InnerSolve MaximizeOnSimplex(const Vector& start, Value value, Grad grad) {
  InnerSolve out;
  out.point = start;
  out.value = value(start);
  double lipschitz = 1.0;
  for (int it = 0; it < kGapInnerMaxIters; ++it) {
    const Vector g = grad(out.point);
    Vector candidate;
    double candidate_value = 0.0;
    for (int backtrack = 0; backtrack < 60; ++backtrack) {
      candidate = ProjectSimplex(out.point + g / lipschitz).probs();
      candidate_value = value(candidate);
      const Vector step = candidate - out.point;
      if (candidate_value >=
          out.value + g.dot(step) - 0.5 * lipschitz * step.squaredNorm() -
              1e-15 * std::max(1.0, std::abs(out.value))) {
        break;
      }
      lipschitz *= 2.0;
    }
    out.residual = lipschitz * (candidate - out.point).norm();
    if (candidate_value >= out.value) {
      out.point = candidate;
      out.value = candidate_value;
    }
    if (out.residual <= kGapInnerTol) return out;
    lipschitz = std::max(1e-12, 0.5 * lipschitz);
  }
  out.capped = true;
  return out;
}

}  // namespace

GapResult DualityGap(const GameOracle& game, const Vector& x, const Vector& y) {
  if (x.size() != game.dim_x() || y.size() != game.dim_y()) {
    throw InvalidInputError("duality gap: point dimensions do not match game");
  }
  GapResult result;
  if (const BilinearStructure* bil = game.bilinear()) {
    const Matrix& a = bil->payoff;
    if (bil->alpha == 0.0) {
      result.value = (a.transpose() * x).maxCoeff() - (a * y).minCoeff();
    } else {
      const double alpha = bil->alpha;
      const Vector best_y = ProjectSimplex(a.transpose() * x / (2.0 * alpha)).probs();
      const Vector best_x = ProjectSimplex(-(a * y) / (2.0 * alpha)).probs();
      result.value = game.Value(x, best_y) - game.Value(best_x, y);
    }
  } else {
    const InnerSolve upper = MaximizeOnSimplex(
        y, [&](const Vector& yy) { return game.Value(x, yy); },
        [&](const Vector& yy) { return game.GradY(x, yy); });
    const InnerSolve lower = MaximizeOnSimplex(
        x, [&](const Vector& xx) { return -game.Value(xx, y); },
        [&](const Vector& xx) { return Vector(-game.GradX(xx, y)); });
    result.value = upper.value + lower.value;
    result.approximate = upper.capped || lower.capped;
    result.inner_residual = std::max(upper.residual, lower.residual);
  }
  // Weak duality; closed forms can dip below zero by round-off only.
  result.value = std::max(0.0, result.value);
  return result;
}

}  // namespace mmx
