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

#ifndef MMX_PLOT_DATA_H_
#define MMX_PLOT_DATA_H_

#include <string>
#include <vector>

#include "mmx/harness.h"

namespace mmx {

enum class PlotKind { kItersVsN, kErrorVsIters, kKlVsIters, kMethodCompare };
std::string ToString(PlotKind kind);
PlotKind ParsePlotKind(const std::string& text);

// Tidy CSV written to <out_dir>/<kind>.csv:
//   iters_vs_n      n,mean_iters,std_iters            (one row per size)
//   error_vs_iters  run_id,config_key,iter,error,failed
//                   error is the run's stop metric; failed = 1 on every row
//                   of a run that ended in numerical failure
//   kl_vs_iters     run_id,config_key,eta,iter,kl     (recorded rows only)
//   method_compare  config_key,method,n,eta,mean_iters,std_iters,
//                   final_metric_mean,converged_fraction,mean_wall_time_s
// With `svg`, also writes <out_dir>/<kind>.svg (log-scale y for the error
// and KL plots). Throws MissingMetricError naming the run when a required
// metric column is absent. Returns the CSV path.
std::string EmitPlotData(const CampaignResult& result, PlotKind kind,
                         const std::string& out_dir, bool svg);

}  // namespace mmx

#endif  // MMX_PLOT_DATA_H_
