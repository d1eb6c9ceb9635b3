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

#ifndef MMX_GAMES_H_
#define MMX_GAMES_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "mmx/simplex.h"

namespace mmx {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Second derivatives of f at a point. xy is n x m, yx is m x n.
struct HessianBlocks {
  Matrix xx;
  Matrix xy;
  Matrix yx;
  Matrix yy;
};

// Known structure f(x, y) = x^T A y + alpha |x|^2 - alpha |y|^2, which lets
// equilibrium code use closed forms instead of iterative inner solves.
struct BilinearStructure {
  Matrix payoff;
  double alpha = 0.0;
};

// Twice-differentiable payoff f(x, y) paid by the x-player (minimizer) to the
// y-player (maximizer), x in the n-simplex and y in the m-simplex.
//
// All evaluations take full ambient vectors and never check simplex
// membership; Jacobian code differentiates with respect to unconstrained
// coordinates. Implementations are immutable and must be safe to call from
// several threads at once.
class GameOracle {
 public:
  virtual ~GameOracle() = default;

  virtual int dim_x() const = 0;
  virtual int dim_y() const = 0;
  virtual std::string name() const = 0;

  virtual double Value(const Vector& x, const Vector& y) const = 0;
  virtual Vector GradX(const Vector& x, const Vector& y) const = 0;
  virtual Vector GradY(const Vector& x, const Vector& y) const = 0;
  virtual HessianBlocks Hessian(const Vector& x, const Vector& y) const = 0;

  // Non-null for the (regularized) bilinear family.
  virtual const BilinearStructure* bilinear() const { return nullptr; }

  // A known equilibrium, when the game ships with one.
  virtual std::optional<std::pair<SimplexPoint, SimplexPoint>>
  KnownEquilibrium() const {
    return std::nullopt;
  }
};

using GamePtr = std::shared_ptr<const GameOracle>;

// f = x^T A y. Throws InvalidGameError on empty or non-finite A.
GamePtr MakeBilinear(const Matrix& payoff);

// A filled row-major with standard normals from Rng(seed).
GamePtr MakeRandomBilinear(int n, int m, std::uint64_t seed);
Matrix RandomGaussianMatrix(int n, int m, std::uint64_t seed);

// f = x_1^2 - y_1^2 + 2 x_1 y_1 on the 2-simplices; equilibrium ((0,1),(0,1)).
GamePtr MakeQuadraticExample();

// f = x^T A y + alpha |x|^2 - alpha |y|^2. alpha = 0 reproduces MakeBilinear.
GamePtr MakeRegularizedBilinear(const Matrix& payoff, double alpha);

// Wraps user-supplied callables. Used for ad hoc payoffs in tests and tools.
struct FunctionGameSpec {
  int n = 0;
  int m = 0;
  std::string name = "custom";
  std::function<double(const Vector&, const Vector&)> value;
  std::function<Vector(const Vector&, const Vector&)> grad_x;
  std::function<Vector(const Vector&, const Vector&)> grad_y;
  std::function<HessianBlocks(const Vector&, const Vector&)> hessian;
};
GamePtr MakeFunctionGame(FunctionGameSpec spec);

Matrix MatchingPennies();
Matrix RockPaperScissors();

struct ConvexityReport {
  bool passed = false;
  double min_eig_xx = 0.0;  // over all samples
  double max_eig_yy = 0.0;
  int samples = 0;
  // Point where the worst violation (or the extreme eigenvalue) occurred.
  Vector witness_x;
  Vector witness_y;
};

// Samples Dirichlet(1) interior points and screens the Hessian blocks:
// passes iff min eig(H_xx) >= -tol and max eig(H_yy) <= tol everywhere.
ConvexityReport CheckConvexConcave(const GameOracle& game, int n_samples,
                                   std::uint64_t seed, double tol);

}  // namespace mmx

#endif  // MMX_GAMES_H_
