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

#ifndef MMX_EIG_H_
#define MMX_EIG_H_

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace mmx {

using ComplexList = std::vector<std::complex<double>>;

// All eigenvalues of a square real matrix, with algebraic multiplicity.
// Uses balancing-free Hessenberg reduction plus shifted real Schur QR
// iteration (Eigen::EigenSolver, capped at 40 sweeps per row). Throws
// InvalidInputError on non-square or non-finite input and EigenSolverFailure
// when the QR iteration does not converge.
ComplexList Eig(const Eigen::MatrixXd& m);

// Sorts by real part, then imaginary part.
void SortEigenvalues(ComplexList& values);

// Largest modulus in `values`, or 0 for an empty list.
double MaxModulus(const ComplexList& values);

}  // namespace mmx

#endif  // MMX_EIG_H_
