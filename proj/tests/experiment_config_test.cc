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

#include "mmx/experiment_config.h"

#include <gtest/gtest.h>

#include "mmx/errors.h"

namespace mmx {
namespace {

using nlohmann::json;

json Base() {
  return json::parse(R"({"game": {"kind": "bilinear", "A": [[1, -1], [-1, 1]]}})");
}

TEST(ExperimentConfigTest, Defaults) {
  const ExperimentConfig c = ParseExperimentConfig(Base());
  EXPECT_EQ(c.method, Method::kOmwu);
  EXPECT_EQ(c.eta, 1.0);
  EXPECT_EQ(c.trials, 10);
  EXPECT_EQ(c.base_seed, 7u);
  EXPECT_EQ(c.max_iters, 200000);
  EXPECT_EQ(c.tol, 1e-5);
  EXPECT_FALSE(c.stop_metric.has_value());
  EXPECT_TRUE(c.metrics.l1);
  EXPECT_EQ(ModeOf(c), CampaignMode::kSingle);
  EXPECT_EQ(MethodsOf(c), std::vector<Method>{Method::kOmwu});
}

TEST(ExperimentConfigTest, FullRoundTrip) {
  json j = Base();
  j["method_list"] = {"omwu", "ogda", "mwu"};
  j["eta_list"] = {0.1, 1.0};
  j["trials"] = 3;
  j["base_seed"] = 42;
  j["max_iters"] = 100;
  j["tol"] = 1e-3;
  j["stop_metric"] = "gap";
  j["metrics"] = {"l1", "kl", "gap"};
  j["record_stride"] = 5;
  j["out_dir"] = "somewhere";
  j["equilibrium"] = {{"x", {0.5, 0.5}}, {"y", {0.5, 0.5}}};
  j["init"] = {{"x", {0.6, 0.4}}, {"y", {0.3, 0.7}}};
  const ExperimentConfig c = ParseExperimentConfig(j);
  EXPECT_EQ(ModeOf(c), CampaignMode::kEtaSweep);
  EXPECT_EQ(MethodsOf(c).size(), 3u);
  const ExperimentConfig again = ParseExperimentConfig(ToJson(c));
  EXPECT_EQ(ToJson(again), ToJson(c));
  EXPECT_EQ(again.init->x[0], 0.6);
}

TEST(ExperimentConfigTest, RejectsUnknownKey) {
  json j = Base();
  j["step"] = 0.1;
  EXPECT_THROW(ParseExperimentConfig(j), ConfigError);
}

TEST(ExperimentConfigTest, RejectsBadValues) {
  const std::vector<std::pair<const char*, json>> bad = {
      {"eta", 0.0},          {"eta", -1.0},        {"eta", "fast"},
      {"trials", 0},         {"max_iters", -1},    {"record_stride", 0},
      {"tol", -1.0},         {"method", "sgd"},    {"metrics", {"l2"}},
      {"stop_metric", "kl"}, {"method_list", json::array()},
      {"eta_list", {0.1, -0.1}}};
  for (const auto& [key, value] : bad) {
    json j = Base();
    j[key] = value;
    EXPECT_THROW(ParseExperimentConfig(j), ConfigError) << key << "=" << value;
  }
}

TEST(ExperimentConfigTest, SweepsAreExclusive) {
  json j = json::parse(R"({"game": {"kind": "random_bilinear", "n": 3, "m": 3},
                           "eta_list": [0.1], "n_list": [2, 3]})");
  EXPECT_THROW(ParseExperimentConfig(j), ConfigError);
  j.erase("eta_list");
  EXPECT_EQ(ModeOf(ParseExperimentConfig(j)), CampaignMode::kSizeSweep);
}

TEST(ExperimentConfigTest, SizeSweepNeedsRandomGame) {
  json j = Base();
  j["n_list"] = {2, 3};
  EXPECT_THROW(ParseExperimentConfig(j), ConfigError);
}

TEST(ExperimentConfigTest, DimensionMismatch) {
  json j = Base();
  j["init"] = {{"x", {0.2, 0.3, 0.5}}, {"y", {0.5, 0.5}}};
  EXPECT_THROW(ParseExperimentConfig(j), ConfigError);
}

TEST(ExperimentConfigTest, InitMustBeOnSimplex) {
  json j = Base();
  j["init"] = {{"x", {0.7, 0.7}}, {"y", {0.5, 0.5}}};
  EXPECT_THROW(ParseExperimentConfig(j), ConfigError);
}

TEST(ExperimentConfigTest, L1NeedsEquilibrium) {
  json j = json::parse(
      R"({"game": {"kind": "regularized_bilinear", "A": [[1, 0], [0, 1]],
                   "alpha": 0.5}})");
  EXPECT_THROW(ParseExperimentConfig(j), ConfigError);
  j["metrics"] = {"gap"};
  j["stop_metric"] = "gap";
  EXPECT_NO_THROW(ParseExperimentConfig(j));
  j["metrics"] = {"kl"};
  j["equilibrium"] = {{"x", {0.5, 0.5}}, {"y", {0.5, 0.5}}};
  EXPECT_NO_THROW(ParseExperimentConfig(j));
}

TEST(ExperimentConfigTest, MetricList) {
  const MetricSelection m = ParseMetricList("gap,l1");
  EXPECT_TRUE(m.l1 && m.gap && !m.kl);
  EXPECT_EQ(ToString(m), "l1,gap");
  EXPECT_THROW(ParseMetricList("l1,foo"), ConfigError);
}

TEST(ExperimentConfigTest, MissingFile) {
  EXPECT_THROW(LoadExperimentConfig("/nonexistent/config.json"), ConfigError);
}

}  // namespace
}  // namespace mmx
