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

#include "mmx/dynamics.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>
#include <utility>

#include "mmx/csv.h"
#include "mmx/equilibrium.h"
#include "mmx/errors.h"

namespace mmx {
namespace {

void CheckEta(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw InvalidParameterError("step size eta must be finite and > 0");
  }
}

void CheckStrictlyPositive(const Vector& v, const char* which) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0)) {
      std::ostringstream msg;
      msg << "multiplicative update needs a strictly positive " << which
          << "; entry " << i << " is " << v[i];
      throw InvalidStateError(msg.str());
    }
  }
}

void CheckFinite(const Vector& g, const char* which) {
  if (!g.allFinite()) {
    throw NumericalFailure(std::string("non-finite gradient ") + which);
  }
}

void CheckDims(const DynamicsState& s, const GameOracle& game) {
  if (s.x_cur.size() != game.dim_x() || s.x_prev.size() != game.dim_x() ||
      s.y_cur.size() != game.dim_y() || s.y_prev.size() != game.dim_y()) {
    throw InvalidInputError("state dimensions do not match the game");
  }
}

}  // namespace

DynamicsState DynamicsState::FromPair(const SimplexPoint& x,
                                      const SimplexPoint& y) {
  return DynamicsState{x, y, x, y};
}

std::string ToString(Method method) {
  switch (method) {
    case Method::kOmwu:
      return "omwu";
    case Method::kOgda:
      return "ogda";
    case Method::kMwu:
      return "mwu";
  }
  return "unknown";
}

std::string ToString(StopMetric metric) {
  return metric == StopMetric::kL1 ? "l1" : "gap";
}

std::string ToString(Termination termination) {
  switch (termination) {
    case Termination::kTolReached:
      return "tol_reached";
    case Termination::kMaxIters:
      return "max_iters";
    case Termination::kNumericalFailure:
      return "numerical_failure";
  }
  return "unknown";
}

Method ParseMethod(const std::string& text) {
  if (text == "omwu") return Method::kOmwu;
  if (text == "ogda") return Method::kOgda;
  if (text == "mwu") return Method::kMwu;
  throw InvalidParameterError("unknown method \"" + text + "\"");
}

StopMetric ParseStopMetric(const std::string& text) {
  if (text == "l1") return StopMetric::kL1;
  if (text == "gap") return StopMetric::kGap;
  throw InvalidParameterError("unknown stop metric \"" + text + "\"");
}

Termination ParseTermination(const std::string& text) {
  if (text == "tol_reached") return Termination::kTolReached;
  if (text == "max_iters") return Termination::kMaxIters;
  if (text == "numerical_failure") return Termination::kNumericalFailure;
  throw InvalidParameterError("unknown termination \"" + text + "\"");
}

Vector MultiplicativeUpdate(const Vector& probs, const Vector& exponents) {
  const double shift = exponents.maxCoeff();
  Vector w = probs.array() * (exponents.array() - shift).exp();
  w /= w.sum();
  if (!w.allFinite()) throw NumericalFailure("multiplicative update overflow");
  if (w.minCoeff() < kPositivityFloor) {
    w = w.cwiseMax(kPositivityFloor);
    w /= w.sum();
  }
  return w;
}

LiftedUpdate OmwuLiftedUpdate(const GameOracle& game, const Vector& x,
                              const Vector& y, const Vector& z,
                              const Vector& w, double eta) {
  CheckEta(eta);
  CheckStrictlyPositive(x, "x");
  CheckStrictlyPositive(y, "y");
  const Vector gx_cur = game.GradX(x, y);
  const Vector gy_cur = game.GradY(x, y);
  const Vector gx_prev = game.GradX(z, w);
  const Vector gy_prev = game.GradY(z, w);
  CheckFinite(gx_cur, "d/dx at the current pair");
  CheckFinite(gy_cur, "d/dy at the current pair");
  CheckFinite(gx_prev, "d/dx at the previous pair");
  CheckFinite(gy_prev, "d/dy at the previous pair");
  return {MultiplicativeUpdate(x, -2.0 * eta * gx_cur + eta * gx_prev),
          MultiplicativeUpdate(y, 2.0 * eta * gy_cur - eta * gy_prev)};
}

DynamicsState OmwuStep(const DynamicsState& state, const GameOracle& game,
                       double eta) {
  CheckDims(state, game);
  LiftedUpdate next =
      OmwuLiftedUpdate(game, state.x_cur.probs(), state.y_cur.probs(),
                       state.x_prev.probs(), state.y_prev.probs(), eta);
  return {SimplexPoint(std::move(next.x_next)),
          SimplexPoint(std::move(next.y_next)), state.x_cur, state.y_cur};
}

DynamicsState MwuStep(const DynamicsState& state, const GameOracle& game,
                      double eta) {
  CheckDims(state, game);
  CheckEta(eta);
  const Vector& x = state.x_cur.probs();
  const Vector& y = state.y_cur.probs();
  CheckStrictlyPositive(x, "x");
  CheckStrictlyPositive(y, "y");
  const Vector gx = game.GradX(x, y);
  const Vector gy = game.GradY(x, y);
  CheckFinite(gx, "d/dx");
  CheckFinite(gy, "d/dy");
  return {SimplexPoint(MultiplicativeUpdate(x, -eta * gx)),
          SimplexPoint(MultiplicativeUpdate(y, eta * gy)), state.x_cur,
          state.y_cur};
}

DynamicsState OgdaStep(const DynamicsState& state, const GameOracle& game,
                       double eta) {
  CheckDims(state, game);
  CheckEta(eta);
  const Vector& x = state.x_cur.probs();
  const Vector& y = state.y_cur.probs();
  const Vector& z = state.x_prev.probs();
  const Vector& w = state.y_prev.probs();
  const Vector gx_cur = game.GradX(x, y);
  const Vector gy_cur = game.GradY(x, y);
  const Vector gx_prev = game.GradX(z, w);
  const Vector gy_prev = game.GradY(z, w);
  CheckFinite(gx_cur, "d/dx at the current pair");
  CheckFinite(gy_cur, "d/dy at the current pair");
  CheckFinite(gx_prev, "d/dx at the previous pair");
  CheckFinite(gy_prev, "d/dy at the previous pair");
  return {ProjectSimplex(x - 2.0 * eta * gx_cur + eta * gx_prev),
          ProjectSimplex(y + 2.0 * eta * gy_cur - eta * gy_prev), state.x_cur,
          state.y_cur};
}

DynamicsState Step(Method method, const DynamicsState& state,
                   const GameOracle& game, double eta) {
  switch (method) {
    case Method::kOmwu:
      return OmwuStep(state, game, eta);
    case Method::kOgda:
      return OgdaStep(state, game, eta);
    case Method::kMwu:
      return MwuStep(state, game, eta);
  }
  throw InvalidParameterError("unhandled method");
}

SimplexPoint ProjectSimplex(const Vector& v) {
  if (v.size() == 0) throw InvalidInputError("cannot project an empty vector");
  if (!v.allFinite()) {
    throw InvalidInputError("cannot project a non-finite vector");
  }
  std::vector<double> sorted(v.data(), v.data() + v.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double threshold = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    cumulative += sorted[j];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) threshold = candidate;
  }
  Vector p = (v.array() - threshold).cwiseMax(0.0);
  p /= p.sum();
  return SimplexPoint(std::move(p));
}

double L1Error(const DynamicsState& state, const StrategyPair& reference) {
  if (state.x_cur.size() != reference.x.size() ||
      state.y_cur.size() != reference.y.size()) {
    throw InvalidInputError("l1 error: dimension mismatch");
  }
  return (state.x_cur.probs() - reference.x.probs()).lpNorm<1>() +
         (state.y_cur.probs() - reference.y.probs()).lpNorm<1>();
}

namespace {

double KlTerm(const Vector& p, const Vector& q) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
    sum += p[i] * std::log(p[i] / q[i]);
  }
  return sum;
}

}  // namespace

double KlToIterate(const StrategyPair& reference, const DynamicsState& state) {
  if (state.x_cur.size() != reference.x.size() ||
      state.y_cur.size() != reference.y.size()) {
    throw InvalidInputError("kl divergence: dimension mismatch");
  }
  // Clamp tiny negative round-off; KL between distributions is >= 0.
  return std::max(0.0, KlTerm(reference.x.probs(), state.x_cur.probs()) +
                           KlTerm(reference.y.probs(), state.y_cur.probs()));
}

Trajectory Run(const GameOracle& game, const DynamicsState& init,
               const RunOptions& options) {
  CheckDims(init, game);
  CheckEta(options.eta);
  if (options.record_stride < 1) {
    throw InvalidParameterError("record_stride must be >= 1");
  }
  if (options.stop.max_iters < 0) {
    throw InvalidParameterError("max_iters must be >= 0");
  }
  if (options.method != Method::kOgda &&
      !(init.x_cur.IsInterior() && init.y_cur.IsInterior() &&
        init.x_prev.IsInterior() && init.y_prev.IsInterior())) {
    throw InvalidStateError(ToString(options.method) +
                            " needs a strictly interior initial state");
  }
  const StopMetric stop_metric = options.stop.metric.value_or(
      options.reference ? StopMetric::kL1 : StopMetric::kGap);
  const bool needs_reference =
      stop_metric == StopMetric::kL1 || options.metrics.l1 || options.metrics.kl;
  if (needs_reference && !options.reference) {
    throw InvalidParameterError(
        "l1 / kl metrics need a reference equilibrium");
  }

  Trajectory traj;
  traj.stop_metric = stop_metric;
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&start] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  };

  DynamicsState state = init;
  for (std::int64_t t = 0; t < options.stop.max_iters; ++t) {
    std::optional<double> l1;
    std::optional<double> gap;
    if (stop_metric == StopMetric::kL1 || options.metrics.l1) {
      l1 = L1Error(state, *options.reference);
    }
    if (stop_metric == StopMetric::kGap || options.metrics.gap) {
      gap = DualityGap(game, state.x_cur.probs(), state.y_cur.probs()).value;
    }
    const double stop_value = stop_metric == StopMetric::kL1 ? *l1 : *gap;
    traj.final_iter = t;
    if (!std::isfinite(stop_value)) {
      traj.terminated_by = Termination::kNumericalFailure;
      traj.failure_message = "stop metric is not finite";
      break;
    }
    traj.final_stop_value = stop_value;
    const bool reached = stop_value <= options.stop.tol;
    const bool last = t + 1 == options.stop.max_iters;
    if (t % options.record_stride == 0 || reached || last) {
      MetricRow row;
      row.iter = t;
      if (options.metrics.l1) row.l1 = l1;
      if (options.metrics.gap) row.gap = gap;
      if (options.metrics.kl) {
        const double kl = KlToIterate(*options.reference, state);
        if (std::isfinite(kl)) row.kl = kl;
      }
      row.wall_time_s = elapsed();
      traj.metrics.push_back(row);
      if (options.keep_states) traj.states.push_back(state);
    }
    if (reached) {
      traj.terminated_by = Termination::kTolReached;
      break;
    }
    if (last) break;
    try {
      state = Step(options.method, state, game, options.eta);
    } catch (const NumericalFailure& e) {
      traj.terminated_by = Termination::kNumericalFailure;
      traj.failure_message = e.what();
      break;
    } catch (const InvalidStateError& e) {
      traj.terminated_by = Termination::kNumericalFailure;
      traj.failure_message = e.what();
      break;
    } catch (const InvalidInputError& e) {
      traj.terminated_by = Termination::kNumericalFailure;
      traj.failure_message = e.what();
      break;
    }
  }
  return traj;
}

void WriteMetricsCsv(std::ostream& out, const Trajectory& trajectory) {
  out << "iter,l1,kl,gap,wall_time_s\n";
  for (const MetricRow& row : trajectory.metrics) {
    out << row.iter << ',' << FormatReal(row.l1) << ',' << FormatReal(row.kl)
        << ',' << FormatReal(row.gap) << ',' << FormatReal(row.wall_time_s)
        << '\n';
  }
}

}  // namespace mmx
