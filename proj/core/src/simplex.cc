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

#include "mmx/simplex.h"

#include <cmath>
#include <sstream>
#include <utility>

#include "mmx/errors.h"

namespace mmx {

SimplexPoint::SimplexPoint(Eigen::VectorXd probs, double tol)
    : probs_(std::move(probs)), tol_(tol) {
  if (probs_.size() == 0) {
    throw InvalidInputError("simplex point must have at least one entry");
  }
  for (Eigen::Index i = 0; i < probs_.size(); ++i) {
    const double p = probs_[i];
    if (!std::isfinite(p)) {
      throw InvalidInputError("simplex point has a non-finite entry");
    }
    if (p < -tol_) {
      std::ostringstream msg;
      msg << "simplex point entry " << i << " = " << p
          << " is negative beyond tolerance " << tol_;
      throw InvalidInputError(msg.str());
    }
    if (p < 0.0) probs_[i] = 0.0;
  }
  const double sum = probs_.sum();
  if (std::abs(sum - 1.0) > tol_) {
    std::ostringstream msg;
    msg << "simplex point sums to " << sum << ", not 1 within " << tol_;
    throw InvalidInputError(msg.str());
  }
  probs_ /= sum;
}

SimplexPoint::SimplexPoint(std::initializer_list<double> probs)
    : SimplexPoint(Eigen::Map<const Eigen::VectorXd>(
          probs.begin(), static_cast<Eigen::Index>(probs.size()))) {}

SimplexPoint SimplexPoint::Uniform(int n) {
  if (n < 1) throw InvalidInputError("uniform simplex point needs n >= 1");
  return SimplexPoint(Eigen::VectorXd::Constant(n, 1.0 / n));
}

bool SimplexPoint::IsInterior() const { return (probs_.array() > 0.0).all(); }

SimplexPoint ClampAwayFromBoundary(const Eigen::VectorXd& probs, double floor) {
  Eigen::VectorXd v = probs.cwiseMax(floor);
  v /= v.sum();
  return SimplexPoint(std::move(v));
}

}  // namespace mmx
