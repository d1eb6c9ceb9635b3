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

#ifndef MMX_ERRORS_H_
#define MMX_ERRORS_H_

#include <stdexcept>
#include <string>

namespace mmx {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed game: non-finite payoffs, zero dimensions, bad spec fields.
class InvalidGameError : public Error {
 public:
  using Error::Error;
};

// Out-of-range scalar parameter (negative alpha, non-positive eta, ...).
class InvalidParameterError : public Error {
 public:
  using Error::Error;
};

// Non-finite or mis-sized vectors, infeasible simplex points.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// Dynamics state unusable by the requested stepper (e.g. OMWU on a zero
// coordinate).
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

// A stepper produced or consumed non-finite numbers.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

// Linear-programming solver gave up.
class SolverFailure : public Error {
 public:
  using Error::Error;
};

class EigenSolverFailure : public Error {
 public:
  using Error::Error;
};

// Point supplied as an equilibrium fails the KKT equalities.
class InvalidEquilibriumError : public Error {
 public:
  using Error::Error;
};

// Experiment configuration is inconsistent or unparsable.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Plot data requested for a metric a run never recorded.
class MissingMetricError : public Error {
 public:
  using Error::Error;
};

}  // namespace mmx

#endif  // MMX_ERRORS_H_
