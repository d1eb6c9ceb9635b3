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

#ifndef MMX_SPECTRAL_H_
#define MMX_SPECTRAL_H_

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmx/dynamics.h"
#include "mmx/eig.h"
#include "mmx/equilibrium.h"
#include "mmx/games.h"
#include "mmx/simplex.h"

namespace mmx {

// Index sets Supp(x*) and Supp(y*), sorted ascending.
struct Supports {
  std::vector<int> x;
  std::vector<int> y;
};

// Entries strictly above `threshold`.
Supports DetectSupports(const SimplexPoint& x, const SimplexPoint& y,
                        double threshold = kDefaultSupportThreshold);

// g(x, y, z, w) = (g1, g2, x, y) where (g1, g2) is the OMWU update with
// (x, y) current and (z, w) previous. Same kernel as OmwuStep.
struct LiftedPoint {
  Vector x;
  Vector y;
  Vector z;
  Vector w;
};
LiftedPoint LiftedMap(const GameOracle& game, const Vector& x, const Vector& y,
                      const Vector& z, const Vector& w, double eta);

// Analytic Jacobian of LiftedMap in the ambient coordinates (x, y, z, w),
// size 2(n+m). Requires x, y strictly positive (InvalidStateError).
Matrix JacobianGeneral(const GameOracle& game, const Vector& x,
                       const Vector& y, const Vector& z, const Vector& w,
                       double eta);

// Jacobian of LiftedMap at (x*, y*, x*, y*). Zero entries are allowed; the
// row of an off-support coordinate then carries its boundary eigenvalue on
// the diagonal. Throws InvalidEquilibriumError if the KKT equalities fail at
// kDefaultKktTol.
Matrix JacobianFixedPoint(const GameOracle& game, const SimplexPoint& x_star,
                          const SimplexPoint& y_star, double eta);

struct OffSupportEigenvalue {
  char player = 'x';  // 'x' or 'y'
  int index = 0;
  double value = 0.0;
};

// For i outside Supp(x*): exp(-eta df/dx_i) / sum_t x*_t exp(-eta df/dx_t);
// for j outside Supp(y*) the same with +eta and y*.
std::vector<OffSupportEigenvalue> OffSupportEigenvalues(
    const GameOracle& game, const SimplexPoint& x_star,
    const SimplexPoint& y_star, double eta,
    const std::optional<Supports>& supports = std::nullopt);

// Support-restricted 2(k_x+k_y)-square matrix
//   [B11 A12 A13 A14; A21 B22 A23 A24; I 0 0 0; 0 I 0 0]
// with B11 = I - 2 eta (D_x - x x^T) H_xx and B22 = I + 2 eta (D_y - y y^T)
// H_yy, Hessians evaluated at (x*, y*).
Matrix BuildJNew(const GameOracle& game, const SimplexPoint& x_star,
                 const SimplexPoint& y_star, double eta,
                 const std::optional<Supports>& supports = std::nullopt);

// 2 eta * blockdiag(D_x - x x^T, D_y - y y^T) * [[-H_xx, -H_xy], [H_yx, H_yy]]
// restricted to the supports; (k_x+k_y)-square.
Matrix BuildJSmall(const GameOracle& game, const SimplexPoint& x_star,
                   const SimplexPoint& y_star, double eta,
                   const std::optional<Supports>& supports = std::nullopt);

// Roots of lambda^2 - (1 + 2 eps) lambda + eps = 0, i.e. solutions of
// lambda (lambda - 1) / (2 lambda - 1) = eps. The larger-magnitude root comes
// first; the other is eps / lambda1.
std::pair<std::complex<double>, std::complex<double>> EigenvalueMap(
    std::complex<double> epsilon);

// lambda (lambda - 1) / (2 lambda - 1).
std::complex<double> InverseEigenvalueMap(std::complex<double> lambda);

enum class StabilityVerdict { kContraction, kNotContraction };
std::string ToString(StabilityVerdict verdict);

inline constexpr double kDefaultContractionMargin = 1e-9;
// |eps| at or below this counts as a zero eigenvalue of J_small.
inline constexpr double kZeroEigenvalueTol = 1e-10;
// Distance from 1/2 under which a J_new eigenvalue is exempt from matching.
inline constexpr double kHalfExemptionTol = 1e-6;

struct SpectralReport {
  double eta = 0.0;
  double margin = kDefaultContractionMargin;
  Supports supports;
  KktReport kkt;
  std::vector<OffSupportEigenvalue> off_support_eigs;
  Matrix j_full;
  Matrix j_new;
  Matrix j_small;
  ComplexList eig_full;
  ComplexList eig_new;
  ComplexList eig_small;
  // Max modulus over eig_full, the off-support eigenvalues and 0. J_new
  // always carries the eigenvalue 1 (left vector (1^T, 0, 0, 0)), so its
  // spectrum cannot certify a contraction on its own.
  double spectral_radius = 0.0;
  // Max modulus over eig_new, off-support eigenvalues and 0; diagnostic.
  double spectral_radius_j_new = 0.0;
  StabilityVerdict verdict = StabilityVerdict::kNotContraction;
  // Max real part over nonzero eig_small; -inf when there is none.
  double max_real_nonzero_small = 0.0;
  // Max over nonzero eps in eig_small and both roots lambda of
  // EigenvalueMap(eps / 2) of the distance from lambda to eig_new.
  double map_residual = 0.0;
  // Max over lambda in eig_new with |2 lambda - 1| > kHalfExemptionTol of
  // min over eig_small of |InverseEigenvalueMap(lambda) - eps|.
  double literal_relation_residual = 0.0;
  // eig_new entries within kHalfExemptionTol of 1/2.
  int half_count = 0;
  bool degenerate_equilibrium = false;
  std::vector<std::string> warnings;
};

// Full stability pipeline at a candidate equilibrium. Throws
// InvalidEquilibriumError when the KKT equalities fail; a degenerate
// equilibrium produces a report with a warning instead.
SpectralReport AnalyzeStability(
    const GameOracle& game, const SimplexPoint& x_star,
    const SimplexPoint& y_star, double eta,
    double margin = kDefaultContractionMargin,
    const std::optional<Supports>& supports = std::nullopt);

// Eigenvalues as [re, im] pairs; matrices as row-major nested arrays when
// `include_matrices` is set.
nlohmann::json ToJson(const SpectralReport& report, bool include_matrices);
nlohmann::json ComplexListToJson(const ComplexList& values);
nlohmann::json MatrixToJson(const Matrix& m);

}  // namespace mmx

#endif  // MMX_SPECTRAL_H_
