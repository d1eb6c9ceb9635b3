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

#ifndef MMX_DYNAMICS_H_
#define MMX_DYNAMICS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mmx/games.h"
#include "mmx/simplex.h"

namespace mmx {

// Lifted state (x^t, y^t, x^{t-1}, y^{t-1}) of a two-step method.
struct DynamicsState {
  SimplexPoint x_cur;
  SimplexPoint y_cur;
  SimplexPoint x_prev;
  SimplexPoint y_prev;

  // Starts with the previous iterate equal to the current one.
  static DynamicsState FromPair(const SimplexPoint& x, const SimplexPoint& y);
  static DynamicsState FromPair(const StrategyPair& p) {
    return FromPair(p.x, p.y);
  }
};

enum class Method { kOmwu, kOgda, kMwu };
enum class StopMetric { kL1, kGap };
enum class Termination { kTolReached, kMaxIters, kNumericalFailure };

std::string ToString(Method method);
std::string ToString(StopMetric metric);
std::string ToString(Termination termination);
Method ParseMethod(const std::string& text);
StopMetric ParseStopMetric(const std::string& text);
Termination ParseTermination(const std::string& text);

// Entries of OMWU/MWU outputs never drop below this, so long runs whose
// off-support mass decays geometrically keep a strictly positive state
// instead of underflowing to an exact zero.
inline constexpr double kPositivityFloor = 1e-300;

// probs_i * exp(e_i) / sum_k probs_k * exp(e_k), evaluated with the maximum
// exponent subtracted first. Output entries are floored at kPositivityFloor
// and renormalized.
Vector MultiplicativeUpdate(const Vector& probs, const Vector& exponents);

struct LiftedUpdate {
  Vector x_next;
  Vector y_next;
};

// One OMWU update with (x, y) as the current pair and (z, w) as the previous
// one. Operates on ambient vectors; x and y must be strictly positive.
// Throws InvalidStateError on non-positive x, y and NumericalFailure on
// non-finite gradients.
LiftedUpdate OmwuLiftedUpdate(const GameOracle& game, const Vector& x,
                              const Vector& y, const Vector& z,
                              const Vector& w, double eta);

DynamicsState OmwuStep(const DynamicsState& state, const GameOracle& game,
                       double eta);
// Projected optimistic gradient descent/ascent.
DynamicsState OgdaStep(const DynamicsState& state, const GameOracle& game,
                       double eta);
// Plain multiplicative weights: exponent -eta * grad_x (resp. +eta * grad_y).
DynamicsState MwuStep(const DynamicsState& state, const GameOracle& game,
                      double eta);
DynamicsState Step(Method method, const DynamicsState& state,
                   const GameOracle& game, double eta);

// Euclidean projection onto the probability simplex (sort and threshold).
SimplexPoint ProjectSimplex(const Vector& v);

// |x_cur - x*|_1 + |y_cur - y*|_1.
double L1Error(const DynamicsState& state, const StrategyPair& reference);

// KL((x*, y*) || (x_cur, y_cur)) with 0 ln(0/q) = 0. Returns +infinity when
// the iterate is zero somewhere the reference is not.
double KlToIterate(const StrategyPair& reference, const DynamicsState& state);

struct MetricRow {
  std::int64_t iter = 0;
  std::optional<double> l1;
  std::optional<double> kl;
  std::optional<double> gap;
  double wall_time_s = 0.0;
};

struct MetricSelection {
  bool l1 = true;
  bool kl = false;
  bool gap = false;
};

struct StopRule {
  double tol = 1e-5;
  // Defaults to l1 when a reference is supplied, gap otherwise.
  std::optional<StopMetric> metric;
  std::int64_t max_iters = 200000;
};

struct RunOptions {
  Method method = Method::kOmwu;
  double eta = 1.0;
  StopRule stop;
  MetricSelection metrics;
  int record_stride = 1;
  bool keep_states = false;
  std::optional<StrategyPair> reference;
};

struct Trajectory {
  // Filled only with keep_states; then parallel to `metrics`.
  std::vector<DynamicsState> states;
  std::vector<MetricRow> metrics;
  Termination terminated_by = Termination::kMaxIters;
  StopMetric stop_metric = StopMetric::kL1;
  // Index of the last evaluated iterate (the one that met tol, if any).
  std::int64_t final_iter = 0;
  std::optional<double> final_stop_value;
  std::string failure_message;
};

// Evaluates iterates t = 0, 1, ..., max_iters - 1, stopping early once the
// stop metric is <= tol. Rows are recorded every record_stride iterations and
// always for the last evaluated iterate. Stepper failures end the run with
// Termination::kNumericalFailure and the partial trajectory.
Trajectory Run(const GameOracle& game, const DynamicsState& init,
               const RunOptions& options);

// Header "iter,l1,kl,gap,wall_time_s"; absent metrics are empty fields.
void WriteMetricsCsv(std::ostream& out, const Trajectory& trajectory);

}  // namespace mmx

#endif  // MMX_DYNAMICS_H_
