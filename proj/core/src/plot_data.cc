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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "mmx/csv.h"
#include "mmx/errors.h"
#include "mmx/svg.h"

namespace mmx {
namespace {

namespace fs = std::filesystem;

std::string Stat(double v) { return std::isnan(v) ? std::string() : FormatReal(v); }

std::ofstream OpenOut(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

std::string ItersVsN(const CampaignResult& r, const fs::path& csv,
                     std::vector<PlotSeries>& series) {
  std::set<int> seen;
  auto out = OpenOut(csv);
  out << "n,mean_iters,std_iters\n";
  PlotSeries s{"mean iterations", {}, {}};
  for (const AggregateRow& a : r.aggregates) {
    if (!seen.insert(a.n).second) {
      throw ConfigError(
          "iters_vs_n needs one configuration per size; campaign has several "
          "rows for n=" + std::to_string(a.n));
    }
    out << a.n << "," << Stat(a.mean_iters) << "," << Stat(a.std_iters) << "\n";
    s.xs.push_back(a.n);
    s.ys.push_back(a.mean_iters);
  }
  series.push_back(std::move(s));
  return "iterations";
}

std::string ErrorVsIters(const CampaignResult& r, const fs::path& csv,
                         std::vector<PlotSeries>& series) {
  auto out = OpenOut(csv);
  out << "run_id,config_key,iter,error,failed\n";
  for (const RunRecord& run : r.runs) {
    const auto rows = ReadRawCsv(r.RawCsvPath(run));
    PlotSeries s{run.run_id, {}, {}};
    for (const MetricRow& row : rows) {
      const auto& v = run.stop_metric == StopMetric::kL1 ? row.l1 : row.gap;
      if (!v) {
        throw MissingMetricError("run " + run.run_id + " has no " +
                                 ToString(run.stop_metric) + " column values");
      }
      out << run.run_id << "," << run.config_key << "," << row.iter << ","
          << FormatReal(*v) << "," << (run.failed() ? 1 : 0) << "\n";
      s.xs.push_back(static_cast<double>(row.iter));
      s.ys.push_back(*v);
    }
    series.push_back(std::move(s));
  }
  return "error";
}

std::string KlVsIters(const CampaignResult& r, const fs::path& csv,
                      std::vector<PlotSeries>& series) {
  if (!r.config.metrics.kl) {
    throw MissingMetricError(
        "campaign did not record kl (run " +
        (r.runs.empty() ? std::string("none") : r.runs.front().run_id) + ")");
  }
  auto out = OpenOut(csv);
  out << "run_id,config_key,eta,iter,kl\n";
  for (const RunRecord& run : r.runs) {
    const auto rows = ReadRawCsv(r.RawCsvPath(run));
    PlotSeries s{run.run_id, {}, {}};
    for (const MetricRow& row : rows) {
      // An empty kl cell marks an infinite divergence at that row.
      out << run.run_id << "," << run.config_key << "," << FormatReal(run.eta)
          << "," << row.iter << "," << FormatReal(row.kl) << "\n";
      if (row.kl) {
        s.xs.push_back(static_cast<double>(row.iter));
        s.ys.push_back(*row.kl);
      }
    }
    series.push_back(std::move(s));
  }
  return "KL";
}

std::string MethodCompare(const CampaignResult& r, const fs::path& csv,
                          std::vector<PlotSeries>& series) {
  std::map<std::string, std::vector<double>> wall;
  for (const RunRecord& run : r.runs) {
    const auto rows = ReadRawCsv(r.RawCsvPath(run));
    if (!rows.empty()) wall[run.config_key].push_back(rows.back().wall_time_s);
  }
  auto out = OpenOut(csv);
  out << "config_key,method,n,eta,mean_iters,std_iters,final_metric_mean,"
         "converged_fraction,mean_wall_time_s\n";
  std::map<std::string, PlotSeries> by_method;
  for (const AggregateRow& a : r.aggregates) {
    double mean_wall = std::nan("");
    if (auto it = wall.find(a.config_key); it != wall.end()) {
      mean_wall = 0.0;
      for (double w : it->second) mean_wall += w;
      mean_wall /= static_cast<double>(it->second.size());
    }
    out << a.config_key << "," << ToString(a.method) << "," << a.n << ","
        << FormatReal(a.eta) << "," << Stat(a.mean_iters) << ","
        << Stat(a.std_iters) << "," << Stat(a.final_metric_mean) << ","
        << Stat(a.converged_fraction) << "," << Stat(mean_wall) << "\n";
    PlotSeries& s = by_method[ToString(a.method)];
    s.label = ToString(a.method);
    s.xs.push_back(std::log10(a.eta));
    s.ys.push_back(a.final_metric_mean);
  }
  for (auto& [_, s] : by_method) series.push_back(std::move(s));
  return "final metric";
}

}  // namespace

std::string ToString(PlotKind kind) {
  switch (kind) {
    case PlotKind::kItersVsN:
      return "iters_vs_n";
    case PlotKind::kErrorVsIters:
      return "error_vs_iters";
    case PlotKind::kKlVsIters:
      return "kl_vs_iters";
    case PlotKind::kMethodCompare:
      return "method_compare";
  }
  return "unknown";
}

PlotKind ParsePlotKind(const std::string& text) {
  if (text == "iters_vs_n") return PlotKind::kItersVsN;
  if (text == "error_vs_iters") return PlotKind::kErrorVsIters;
  if (text == "kl_vs_iters") return PlotKind::kKlVsIters;
  if (text == "method_compare") return PlotKind::kMethodCompare;
  throw ConfigError("unknown plot kind \"" + text + "\"");
}

std::string EmitPlotData(const CampaignResult& result, PlotKind kind,
                         const std::string& out_dir, bool svg) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw ConfigError("cannot create " + out_dir + ": " + ec.message());
  const fs::path csv = fs::path(out_dir) / (ToString(kind) + ".csv");
  std::vector<PlotSeries> series;
  PlotOptions po;
  po.title = ToString(kind);
  switch (kind) {
    case PlotKind::kItersVsN:
      po.y_label = ItersVsN(result, csv, series);
      po.x_label = "n";
      break;
    case PlotKind::kErrorVsIters:
      po.y_label = ErrorVsIters(result, csv, series);
      po.x_label = "iteration";
      po.log_y = true;
      break;
    case PlotKind::kKlVsIters:
      po.y_label = KlVsIters(result, csv, series);
      po.x_label = "iteration";
      po.log_y = true;
      break;
    case PlotKind::kMethodCompare:
      po.y_label = MethodCompare(result, csv, series);
      po.x_label = "log10(eta)";
      po.log_y = true;
      break;
  }
  if (svg) {
    WriteLinePlotSvg((fs::path(out_dir) / (ToString(kind) + ".svg")).string(),
                     series, po);
  }
  return csv.string();
}

}  // namespace mmx
