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

#include "mmx/games.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "mmx/errors.h"
#include "mmx/rng.h"

namespace mmx {
namespace {

void CheckPayoff(const Matrix& payoff) {
  if (payoff.rows() < 1 || payoff.cols() < 1) {
    throw InvalidGameError("payoff matrix must be at least 1x1");
  }
  if (!payoff.allFinite()) {
    throw InvalidGameError("payoff matrix has non-finite entries");
  }
}

class RegularizedBilinearGame final : public GameOracle {
 public:
  RegularizedBilinearGame(Matrix payoff, double alpha)
      : structure_{std::move(payoff), alpha} {}

  int dim_x() const override { return static_cast<int>(A().rows()); }
  int dim_y() const override { return static_cast<int>(A().cols()); }
  std::string name() const override {
    return alpha() == 0.0 ? "bilinear" : "regularized_bilinear";
  }

  double Value(const Vector& x, const Vector& y) const override {
    return x.dot(A() * y) + alpha() * (x.squaredNorm() - y.squaredNorm());
  }
  Vector GradX(const Vector& x, const Vector& y) const override {
    return A() * y + 2.0 * alpha() * x;
  }
  Vector GradY(const Vector& x, const Vector& y) const override {
    return A().transpose() * x - 2.0 * alpha() * y;
  }
  HessianBlocks Hessian(const Vector&, const Vector&) const override {
    const int n = dim_x();
    const int m = dim_y();
    return {2.0 * alpha() * Matrix::Identity(n, n), A(), A().transpose(),
            -2.0 * alpha() * Matrix::Identity(m, m)};
  }
  const BilinearStructure* bilinear() const override { return &structure_; }

 private:
  const Matrix& A() const { return structure_.payoff; }
  double alpha() const { return structure_.alpha; }

  BilinearStructure structure_;
};

class QuadraticExampleGame final : public GameOracle {
 public:
  int dim_x() const override { return 2; }
  int dim_y() const override { return 2; }
  std::string name() const override { return "quadratic"; }

  double Value(const Vector& x, const Vector& y) const override {
    return x[0] * x[0] - y[0] * y[0] + 2.0 * x[0] * y[0];
  }
  Vector GradX(const Vector& x, const Vector& y) const override {
    return Vector{{2.0 * x[0] + 2.0 * y[0], 0.0}};
  }
  Vector GradY(const Vector& x, const Vector& y) const override {
    return Vector{{2.0 * x[0] - 2.0 * y[0], 0.0}};
  }
  HessianBlocks Hessian(const Vector&, const Vector&) const override {
    HessianBlocks h{Matrix::Zero(2, 2), Matrix::Zero(2, 2), Matrix::Zero(2, 2),
                    Matrix::Zero(2, 2)};
    h.xx(0, 0) = 2.0;
    h.yy(0, 0) = -2.0;
    h.xy(0, 0) = 2.0;
    h.yx(0, 0) = 2.0;
    return h;
  }
  std::optional<std::pair<SimplexPoint, SimplexPoint>> KnownEquilibrium()
      const override {
    return std::make_pair(SimplexPoint{0.0, 1.0}, SimplexPoint{0.0, 1.0});
  }
};

class FunctionGame final : public GameOracle {
 public:
  explicit FunctionGame(FunctionGameSpec spec) : spec_(std::move(spec)) {}

  int dim_x() const override { return spec_.n; }
  int dim_y() const override { return spec_.m; }
  std::string name() const override { return spec_.name; }
  double Value(const Vector& x, const Vector& y) const override {
    return spec_.value(x, y);
  }
  Vector GradX(const Vector& x, const Vector& y) const override {
    return spec_.grad_x(x, y);
  }
  Vector GradY(const Vector& x, const Vector& y) const override {
    return spec_.grad_y(x, y);
  }
  HessianBlocks Hessian(const Vector& x, const Vector& y) const override {
    return spec_.hessian(x, y);
  }

 private:
  FunctionGameSpec spec_;
};

}  // namespace

GamePtr MakeBilinear(const Matrix& payoff) {
  CheckPayoff(payoff);
  return std::make_shared<RegularizedBilinearGame>(payoff, 0.0);
}

Matrix RandomGaussianMatrix(int n, int m, std::uint64_t seed) {
  if (n < 1 || m < 1) {
    std::ostringstream msg;
    msg << "random bilinear game needs n, m >= 1 (got " << n << ", " << m
        << ")";
    throw InvalidGameError(msg.str());
  }
  Rng rng(seed);
  Matrix a(n, m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) a(i, j) = rng.StandardNormal();
  }
  return a;
}

GamePtr MakeRandomBilinear(int n, int m, std::uint64_t seed) {
  return MakeBilinear(RandomGaussianMatrix(n, m, seed));
}

GamePtr MakeQuadraticExample() {
  return std::make_shared<QuadraticExampleGame>();
}

GamePtr MakeRegularizedBilinear(const Matrix& payoff, double alpha) {
  CheckPayoff(payoff);
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw InvalidParameterError("regularization alpha must be finite and >= 0");
  }
  return std::make_shared<RegularizedBilinearGame>(payoff, alpha);
}

GamePtr MakeFunctionGame(FunctionGameSpec spec) {
  if (spec.n < 1 || spec.m < 1) {
    throw InvalidGameError("function game needs n, m >= 1");
  }
  if (!spec.value || !spec.grad_x || !spec.grad_y || !spec.hessian) {
    throw InvalidGameError("function game is missing a callable");
  }
  return std::make_shared<FunctionGame>(std::move(spec));
}

Matrix MatchingPennies() { return Matrix{{1.0, -1.0}, {-1.0, 1.0}}; }

Matrix RockPaperScissors() {
  return Matrix{{0.0, -1.0, 1.0}, {1.0, 0.0, -1.0}, {-1.0, 1.0, 0.0}};
}

ConvexityReport CheckConvexConcave(const GameOracle& game, int n_samples,
                                   std::uint64_t seed, double tol) {
  if (n_samples < 1) {
    throw InvalidParameterError("convexity screen needs n_samples >= 1");
  }
  Rng rng(seed);
  ConvexityReport report;
  report.min_eig_xx = std::numeric_limits<double>::infinity();
  report.max_eig_yy = -std::numeric_limits<double>::infinity();
  double worst_violation = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < n_samples; ++s) {
    const Vector x = rng.DirichletOnes(game.dim_x());
    const Vector y = rng.DirichletOnes(game.dim_y());
    const HessianBlocks h = game.Hessian(x, y);
    const Matrix sym_xx = 0.5 * (h.xx + h.xx.transpose());
    const Matrix sym_yy = 0.5 * (h.yy + h.yy.transpose());
    const double lo =
        Eigen::SelfAdjointEigenSolver<Matrix>(sym_xx, Eigen::EigenvaluesOnly)
            .eigenvalues()
            .minCoeff();
    const double hi =
        Eigen::SelfAdjointEigenSolver<Matrix>(sym_yy, Eigen::EigenvaluesOnly)
            .eigenvalues()
            .maxCoeff();
    report.min_eig_xx = std::min(report.min_eig_xx, lo);
    report.max_eig_yy = std::max(report.max_eig_yy, hi);
    const double violation = std::max(-lo, hi);
    if (violation > worst_violation) {
      worst_violation = violation;
      report.witness_x = x;
      report.witness_y = y;
    }
  }
  report.samples = n_samples;
  report.passed = report.min_eig_xx >= -tol && report.max_eig_yy <= tol;
  return report;
}

}  // namespace mmx
