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

#ifndef MMX_SIMPLEX_H_
#define MMX_SIMPLEX_H_

#include <initializer_list>

#include <Eigen/Dense>

namespace mmx {

inline constexpr double kDefaultSimplexTol = 1e-9;

// A probability vector. Construction validates against `tol`: entries in
// [-tol, 0) are clamped to zero, the sum must lie within tol of one, and the
// stored vector is renormalized to sum to one.
class SimplexPoint {
 public:
  // Throws InvalidInputError on non-finite entries, entries below -tol, an
  // empty vector, or a sum further than tol from one.
  explicit SimplexPoint(Eigen::VectorXd probs, double tol = kDefaultSimplexTol);
  SimplexPoint(std::initializer_list<double> probs);

  static SimplexPoint Uniform(int n);

  const Eigen::VectorXd& probs() const { return probs_; }
  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int i) const { return probs_[i]; }
  double tol() const { return tol_; }

  // True when every entry is strictly positive.
  bool IsInterior() const;

  friend bool operator==(const SimplexPoint& a, const SimplexPoint& b) {
    return a.probs_.size() == b.probs_.size() && a.probs_ == b.probs_;
  }

 private:
  Eigen::VectorXd probs_;
  double tol_;
};

// A (min-player, max-player) strategy profile.
struct StrategyPair {
  SimplexPoint x;
  SimplexPoint y;
};

// Clamps entries below `floor` up to it and renormalizes. Used to move
// Dirichlet draws off the boundary before running multiplicative dynamics.
SimplexPoint ClampAwayFromBoundary(const Eigen::VectorXd& probs,
                                   double floor = 1e-12);

}  // namespace mmx

#endif  // MMX_SIMPLEX_H_
