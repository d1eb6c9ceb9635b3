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

#ifndef MMX_EXPERIMENT_CONFIG_H_
#define MMX_EXPERIMENT_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmx/dynamics.h"
#include "mmx/game_spec.h"
#include "mmx/simplex.h"

namespace mmx {

// Campaign description. JSON keys (all optional except "game"):
//   game           game spec object (see game_spec.h)
//   method         "omwu" | "ogda" | "mwu"                 default "omwu"
//   method_list    list of methods run on shared seeds and inits
//   eta            step size > 0                           default 1.0
//   eta_list       step-size sweep
//   n_list         size sweep (random_bilinear only; m = n)
//   trials         >= 1                                    default 10
//   base_seed      trial t uses seed base_seed + t         default 7
//   max_iters      >= 0                                    default 200000
//   tol            stop tolerance                          default 1e-5
//   stop_metric    "l1" | "gap"; default l1 when an equilibrium is known
//   metrics        subset of ["l1", "kl", "gap"]           default ["l1"]
//   record_stride  >= 1                                    default 1
//   out_dir        output directory                        default "results"
//   equilibrium    {"x": [...], "y": [...]} reference for l1 / kl
//   init           {"x": [...], "y": [...]} shared start instead of Dirichlet
// Unknown keys are rejected with ConfigError.
struct ExperimentConfig {
  GameSpec game;
  Method method = Method::kOmwu;
  std::vector<Method> method_list;
  double eta = 1.0;
  std::vector<double> eta_list;
  std::vector<int> n_list;
  int trials = 10;
  std::uint64_t base_seed = 7;
  std::int64_t max_iters = 200000;
  double tol = 1e-5;
  std::optional<StopMetric> stop_metric;
  MetricSelection metrics;
  int record_stride = 1;
  std::string out_dir = "results";
  std::optional<StrategyPair> equilibrium;
  std::optional<StrategyPair> init;
};

enum class CampaignMode { kSingle, kEtaSweep, kSizeSweep };
std::string ToString(CampaignMode mode);
CampaignMode ModeOf(const ExperimentConfig& config);

// Methods actually run: method_list when given, otherwise {method}.
std::vector<Method> MethodsOf(const ExperimentConfig& config);

// Throws ConfigError on any malformed or conflicting field.
ExperimentConfig ParseExperimentConfig(const nlohmann::json& j);
ExperimentConfig LoadExperimentConfig(const std::string& path);
nlohmann::json ToJson(const ExperimentConfig& config);

// Cross-field checks (sweep exclusivity, equilibrium availability for l1 and
// kl, dimension agreement). Throws ConfigError.
void ValidateExperimentConfig(const ExperimentConfig& config);

// "l1,kl" style list.
MetricSelection ParseMetricList(const std::string& text);
std::string ToString(const MetricSelection& metrics);

}  // namespace mmx

#endif  // MMX_EXPERIMENT_CONFIG_H_
