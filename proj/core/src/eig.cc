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

#include "mmx/eig.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "mmx/errors.h"

namespace mmx {

ComplexList Eig(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) {
    throw InvalidInputError("eigenvalues need a square matrix, got " +
                            std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()));
  }
  if (m.size() == 0) return {};
  if (!m.allFinite()) {
    throw InvalidInputError("eigenvalues need a finite matrix");
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    const std::string size = std::to_string(m.rows());
    throw EigenSolverFailure("QR iteration did not converge for a " + size +
                             "x" + size + " matrix");
  }
  const Eigen::VectorXcd values = solver.eigenvalues();
  return ComplexList(values.data(), values.data() + values.size());
}

void SortEigenvalues(ComplexList& values) {
  std::sort(values.begin(), values.end(),
            [](const std::complex<double>& a, const std::complex<double>& b) {
              if (a.real() != b.real()) return a.real() < b.real();
              return a.imag() < b.imag();
            });
}

double MaxModulus(const ComplexList& values) {
  double best = 0.0;
  for (const auto& v : values) best = std::max(best, std::abs(v));
  return best;
}

}  // namespace mmx
