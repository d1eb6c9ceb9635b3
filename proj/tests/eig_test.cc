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

#include <cmath>

#include <gtest/gtest.h>

#include "mmx/errors.h"
#include "mmx/rng.h"

namespace mmx {
namespace {

TEST(EigTest, Identity) {
  const ComplexList e = Eig(Eigen::MatrixXd::Identity(4, 4));
  ASSERT_EQ(e.size(), 4u);
  for (const auto& v : e) EXPECT_NEAR(std::abs(v - 1.0), 0.0, 1e-15);
}

TEST(EigTest, Rotation) {
  const double th = 0.3;
  Eigen::MatrixXd r(2, 2);
  r << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  ComplexList e = Eig(r);
  SortEigenvalues(e);
  EXPECT_NEAR(e[0].real(), std::cos(th), 1e-15);
  EXPECT_NEAR(e[0].imag(), -std::sin(th), 1e-15);
  EXPECT_NEAR(e[1].imag(), std::sin(th), 1e-15);
  EXPECT_NEAR(MaxModulus(e), 1.0, 1e-15);
}

TEST(EigTest, CompanionCubic) {
  // (l - 1)(l - 2)(l - 3) = l^3 - 6 l^2 + 11 l - 6.
  Eigen::MatrixXd c(3, 3);
  c << 6, -11, 6, 1, 0, 0, 0, 1, 0;
  ComplexList e = Eig(c);
  SortEigenvalues(e);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(e[i].real(), i + 1.0, 1e-12);
    EXPECT_NEAR(e[i].imag(), 0.0, 1e-12);
  }
}

TEST(EigTest, ResidualOfRandomMatrices) {
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t;
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a(i, j) = rng.StandardNormal();
    }
    const Eigen::MatrixXcd ac = a.cast<std::complex<double>>();
    for (const auto& l : Eig(a)) {
      // sigma_min(A - l I) should vanish.
      const Eigen::MatrixXcd shifted =
          ac - l * Eigen::MatrixXcd::Identity(n, n);
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted);
      EXPECT_LE(svd.singularValues()(n - 1), 1e-10 * a.norm());
    }
  }
}

TEST(EigTest, TraceAndEmpty) {
  Eigen::MatrixXd a(3, 3);
  a << 1, 2, 3, 4, 5, 6, 7, 8, 10;
  std::complex<double> sum = 0;
  for (const auto& l : Eig(a)) sum += l;
  EXPECT_NEAR(sum.real(), 16.0, 1e-12);
  EXPECT_TRUE(Eig(Eigen::MatrixXd(0, 0)).empty());
  EXPECT_EQ(MaxModulus({}), 0.0);
}

TEST(EigTest, Rejections) {
  EXPECT_THROW(Eig(Eigen::MatrixXd::Zero(2, 3)), InvalidInputError);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(2, 2);
  bad(0, 1) = NAN;
  EXPECT_THROW(Eig(bad), InvalidInputError);
}

}  // namespace
}  // namespace mmx
