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

#ifndef MMX_HARNESS_H_
#define MMX_HARNESS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmx/dynamics.h"
#include "mmx/experiment_config.h"
#include "mmx/games.h"

namespace mmx {

// One (size, step, method) combination of a campaign.
struct ConfigPoint {
  std::string key;  // e.g. "omwu_n20_eta1"
  int n = 0;
  int m = 0;
  double eta = 0.0;
  Method method = Method::kOmwu;
};

std::vector<ConfigPoint> ExpandConfigPoints(const ExperimentConfig& config);

// Where the reference equilibrium of a run came from.
enum class EquilibriumSource { kNone, kSupplied, kKnown, kLinearProgram };
std::string ToString(EquilibriumSource source);
EquilibriumSource ParseEquilibriumSource(const std::string& text);

struct RunRecord {
  std::string run_id;
  std::string config_key;
  int trial = 0;
  std::uint64_t seed = 0;
  int n = 0;
  int m = 0;
  double eta = 0.0;
  Method method = Method::kOmwu;
  StopMetric stop_metric = StopMetric::kL1;
  Termination terminated_by = Termination::kMaxIters;
  std::int64_t final_iter = 0;
  std::optional<double> final_stop_value;
  EquilibriumSource equilibrium_source = EquilibriumSource::kNone;
  bool unique_hint = true;
  bool degenerate_equilibrium = false;
  std::string note;
  std::string failure_message;

  bool converged() const { return terminated_by == Termination::kTolReached; }
  bool failed() const {
    return terminated_by == Termination::kNumericalFailure;
  }
};

// Statistics over the runs of one ConfigPoint. Iteration counts use
// final_iter (censored at max_iters - 1 for runs that stop at the cap);
// runs that ended in numerical failure are excluded from the iteration and
// final-metric statistics but count in the converged_fraction denominator.
// Standard deviations are sample (n - 1) deviations, 0 for a single value;
// statistics over an empty set are NaN.
struct AggregateRow {
  std::string config_key;
  int n = 0;
  double eta = 0.0;
  Method method = Method::kOmwu;
  double mean_iters = 0.0;
  double std_iters = 0.0;
  double final_metric_mean = 0.0;
  double final_metric_std = 0.0;
  double converged_fraction = 0.0;
};

struct CampaignResult {
  ExperimentConfig config;
  std::vector<ConfigPoint> points;
  std::vector<RunRecord> runs;  // ordered by (point, trial)
  std::vector<AggregateRow> aggregates;
  std::vector<std::string> notes;

  std::string RawCsvPath(const RunRecord& run) const;
  bool AllRunsFailed() const;
};

struct HarnessOptions {
  // Worker threads; 0 means std::thread::hardware_concurrency().
  int jobs = 0;
  // Write raw CSVs, aggregate.csv and metadata.json under config.out_dir.
  bool write_files = true;
};

// Runs every (point, trial) pair. Trial t draws its game (random kinds
// without a fixed seed) and its Dirichlet(1) init from seed base_seed + t,
// so methods and points share inits. Writes out_dir/raw/<run_id>.csv
// ("run_id,iter,l1,kl,gap,wall_time_s"), out_dir/aggregate.csv and
// out_dir/metadata.json. Per-run numerical failures are recorded and the
// campaign continues. Throws ConfigError before any run on bad configs.
CampaignResult RunExperiment(const ExperimentConfig& config,
                             const HarnessOptions& options = {});

// RunExperiment with method_list defaulting to {omwu, ogda}.
CampaignResult CompareMethods(ExperimentConfig config,
                              const HarnessOptions& options = {});

// Recomputes aggregates from the runs' raw CSVs and tolerance; used both when
// writing and to check that aggregate.csv is reproducible from raw data.
std::vector<AggregateRow> AggregateFromRaw(const CampaignResult& result);

// Re-reads a campaign directory written by RunExperiment.
CampaignResult LoadCampaign(const std::string& out_dir);

void WriteAggregateCsv(const std::string& path,
                       const std::vector<AggregateRow>& rows);
std::vector<AggregateRow> ReadAggregateCsv(const std::string& path);

// Raw CSV rows of one run.
std::vector<MetricRow> ReadRawCsv(const std::string& path);

// Phase-plane trajectories of a 2x2 game: for each eta writes
// out_dir/trajectory_eta<eta>.csv ("iter,x1,y1") and one overlay SVG
// out_dir/trajectory.svg. Returns the recorded (x1, y1) series per eta.
// Throws ConfigError unless n = m = 2.
struct TrajectorySeries {
  double eta = 0.0;
  std::vector<std::int64_t> iters;
  std::vector<double> x1;
  std::vector<double> y1;
  Termination terminated_by = Termination::kMaxIters;
};
std::vector<TrajectorySeries> TrajectoryVisual(
    const GameOracle& game, Method method, const std::vector<double>& eta_list,
    const StrategyPair& init, const StopRule& stop, int record_stride,
    const std::optional<StrategyPair>& reference, const std::string& out_dir);

}  // namespace mmx

#endif  // MMX_HARNESS_H_
