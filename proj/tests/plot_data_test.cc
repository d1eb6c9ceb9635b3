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

#include "mmx/plot_data.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "mmx/csv.h"
#include "mmx/errors.h"
#include "mmx/harness.h"
#include "mmx/svg.h"

namespace mmx {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string FreshDir(const std::string& name) {
  const fs::path p = fs::path(::testing::TempDir()) / ("mmx_plot_" + name);
  fs::remove_all(p);
  return p.string();
}

CampaignResult Campaign(json j, const std::string& name) {
  j["out_dir"] = FreshDir(name);
  return RunExperiment(ParseExperimentConfig(j), {1, true});
}

TEST(PlotDataTest, ItersVsN) {
  const CampaignResult r = Campaign(
      json::parse(R"({"game": {"kind": "random_bilinear", "n": 2, "m": 2},
                      "n_list": [2, 3, 4], "trials": 2, "eta": 0.3,
                      "max_iters": 2000, "tol": 1e-3})"),
      "size");
  const std::string path = EmitPlotData(r, PlotKind::kItersVsN,
                                        FreshDir("size_out"), true);
  const CsvTable t = ReadCsvFile(path);
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[0], (std::vector<std::string>{"n", "mean_iters", "std_iters"}));
  EXPECT_EQ(t[1][0], "2");
  EXPECT_TRUE(fs::exists(fs::path(path).replace_extension(".svg")));
}

TEST(PlotDataTest, ErrorVsItersFlagsFailedRuns) {
  const CampaignResult r = Campaign(
      json::parse(R"({"game": {"kind": "regularized_bilinear",
                               "A": [[1e300, -1e300], [-1e300, 1e300]],
                               "alpha": 0.001},
                      "eta": 1e10, "trials": 1, "max_iters": 20,
                      "stop_metric": "gap", "metrics": ["gap"]})"),
      "fail");
  ASSERT_TRUE(r.runs[0].failed());
  const CsvTable t =
      ReadCsvFile(EmitPlotData(r, PlotKind::kErrorVsIters, FreshDir("fo"), false));
  ASSERT_GE(t.size(), 2u);
  EXPECT_EQ(t[0].back(), "failed");
  for (std::size_t i = 1; i < t.size(); ++i) EXPECT_EQ(t[i].back(), "1");
}

TEST(PlotDataTest, KlNeedsKlColumn) {
  const CampaignResult r = Campaign(
      json::parse(R"({"game": {"kind": "bilinear", "A": [[1, -1], [-1, 1]]},
                      "trials": 1, "max_iters": 10, "eta": 0.1})"),
      "nokl");
  EXPECT_THROW(EmitPlotData(r, PlotKind::kKlVsIters, FreshDir("nokl_out"), false),
               MissingMetricError);
}

TEST(PlotDataTest, KlAndMethodCompare) {
  const CampaignResult r = Campaign(
      json::parse(R"({"game": {"kind": "bilinear", "A": [[1, -1], [-1, 1]]},
                      "trials": 2, "max_iters": 100, "eta_list": [0.1, 0.2],
                      "method_list": ["omwu", "ogda"],
                      "metrics": ["l1", "kl"], "record_stride": 10})"),
      "kl");
  const CsvTable kl =
      ReadCsvFile(EmitPlotData(r, PlotKind::kKlVsIters, FreshDir("kl_out"), true));
  EXPECT_EQ(kl[0], (std::vector<std::string>{"run_id", "config_key", "eta",
                                             "iter", "kl"}));
  const CsvTable mc = ReadCsvFile(
      EmitPlotData(r, PlotKind::kMethodCompare, FreshDir("mc_out"), false));
  EXPECT_EQ(mc.size(), 5u);
  EXPECT_EQ(mc[0].back(), "mean_wall_time_s");
}

TEST(PlotKindTest, Parse) {
  for (PlotKind k : {PlotKind::kItersVsN, PlotKind::kErrorVsIters,
                     PlotKind::kKlVsIters, PlotKind::kMethodCompare}) {
    EXPECT_EQ(ParsePlotKind(ToString(k)), k);
  }
  EXPECT_THROW(ParsePlotKind("histogram"), ConfigError);
}

TEST(SvgTest, RendersSeries) {
  PlotOptions o;
  o.title = "a <b> & c";
  o.log_y = true;
  const std::string svg = RenderLinePlotSvg(
      {{"s1", {0, 1, 2}, {1, 0.1, 0.0}}, {"s2", {0, 1}, {1, 2}}}, o);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_NE(svg.find("&lt;b&gt; &amp; c"), std::string::npos);
  EXPECT_NE(svg.find("s2"), std::string::npos);
}

}  // namespace
}  // namespace mmx
