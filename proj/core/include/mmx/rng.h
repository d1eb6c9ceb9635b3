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

#ifndef MMX_RNG_H_
#define MMX_RNG_H_

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace mmx {

// Seedable generator used everywhere randomness enters the library.
//
// Engine: std::mt19937_64 (MT19937-64, fully specified by the C++ standard),
// seeded with a 64-bit value after a SplitMix64 scramble of (seed, stream).
// Uniforms take the top 53 bits of one engine draw; normals use the
// Box-Muller transform on two such uniforms. No std::*_distribution is used,
// so draws are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  // Uniform on the open interval (0, 1).
  double Uniform();
  double StandardNormal();
  // Exp(1) draw.
  double Exponential();

  // Dirichlet(1, ..., 1): uniform on the probability simplex.
  Eigen::VectorXd DirichletOnes(int n);

  std::uint64_t NextU64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

// SplitMix64 finalizer; exposed for deriving child seeds.
std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t stream);

}  // namespace mmx

#endif  // MMX_RNG_H_
