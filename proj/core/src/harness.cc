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

#include "mmx/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "mmx/csv.h"
#include "mmx/equilibrium.h"
#include "mmx/errors.h"
#include "mmx/rng.h"
#include "mmx/svg.h"

namespace mmx {
namespace {

namespace fs = std::filesystem;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::uint64_t kInitStream = 1;
constexpr const char* kRawHeader = "run_id,iter,l1,kl,gap,wall_time_s";
constexpr const char* kAggregateHeader =
    "config_key,n,eta,method,mean_iters,std_iters,final_metric_mean,"
    "final_metric_std,converged_fraction";

std::string EtaLabel(double eta) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", eta);
  return buf;
}

std::string FormatStat(double v) {
  return std::isnan(v) ? std::string() : FormatReal(v);
}

double ParseStat(const std::string& cell) {
  const auto v = ParseOptionalReal(cell);
  return v ? *v : kNaN;
}

void MeanStd(const std::vector<double>& v, double& mean, double& sd) {
  if (v.empty()) {
    mean = sd = kNaN;
    return;
  }
  mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  if (v.size() < 2) {
    sd = 0.0;
    return;
  }
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
}

void WriteRawCsv(const std::string& path, const std::string& run_id,
                 const std::vector<MetricRow>& rows) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << kRawHeader << "\n";
  for (const MetricRow& r : rows) {
    out << run_id << "," << r.iter << "," << FormatReal(r.l1) << ","
        << FormatReal(r.kl) << "," << FormatReal(r.gap) << ","
        << FormatReal(r.wall_time_s) << "\n";
  }
}

struct Reference {
  std::optional<StrategyPair> pair;
  EquilibriumSource source = EquilibriumSource::kNone;
  bool unique_hint = true;
  bool degenerate = false;
};

Reference ResolveReference(const ExperimentConfig& config,
                           const GameOracle& game) {
  Reference ref;
  if (config.equilibrium) {
    ref.pair = *config.equilibrium;
    ref.source = EquilibriumSource::kSupplied;
  } else if (auto known = game.KnownEquilibrium()) {
    ref.pair = StrategyPair{known->first, known->second};
    ref.source = EquilibriumSource::kKnown;
  } else if (const BilinearStructure* bil = game.bilinear();
             bil && bil->alpha == 0.0) {
    BilinearSolution sol = SolveBilinear(bil->payoff);
    ref.pair = StrategyPair{sol.x, sol.y};
    ref.source = EquilibriumSource::kLinearProgram;
    ref.unique_hint = sol.unique_hint;
  }
  if (ref.pair) {
    const KktReport kkt = CheckKkt(game, ref.pair->x, ref.pair->y,
                                   kDefaultKktTol);
    ref.degenerate = kkt.verdict == KktVerdict::kPassDegenerate;
  }
  return ref;
}

struct Task {
  std::size_t point;
  int trial;
};

RunRecord RunOne(const ExperimentConfig& config, const ConfigPoint& point,
                 int trial, const std::string& raw_dir, bool write_files) {
  RunRecord rec;
  rec.config_key = point.key;
  rec.trial = trial;
  rec.run_id = point.key + "_t" + std::to_string(trial);
  rec.seed = config.base_seed + static_cast<std::uint64_t>(trial);
  rec.n = point.n;
  rec.m = point.m;
  rec.eta = point.eta;
  rec.method = point.method;

  std::vector<MetricRow> rows;
  try {
    GameSpec spec = config.game;
    if (ModeOf(config) == CampaignMode::kSizeSweep) {
      spec.n = point.n;
      spec.m = point.m;
    }
    const GamePtr game = BuildGame(
        spec, spec.seed ? std::nullopt : std::optional<std::uint64_t>(rec.seed));
    const Reference ref = ResolveReference(config, *game);
    rec.equilibrium_source = ref.source;
    rec.unique_hint = ref.unique_hint;
    rec.degenerate_equilibrium = ref.degenerate;

    StopMetric stop = config.stop_metric.value_or(
        ref.pair ? StopMetric::kL1 : StopMetric::kGap);
    if (stop == StopMetric::kL1 && !ref.unique_hint) {
      stop = StopMetric::kGap;
      rec.note =
          "equilibrium may not be unique; stop metric downgraded to gap";
    }
    rec.stop_metric = stop;

    StrategyPair init = config.init.value_or([&] {
      Rng rng(rec.seed, kInitStream);
      SimplexPoint x = ClampAwayFromBoundary(rng.DirichletOnes(point.n));
      SimplexPoint y = ClampAwayFromBoundary(rng.DirichletOnes(point.m));
      return StrategyPair{std::move(x), std::move(y)};
    }());

    RunOptions opts;
    opts.method = point.method;
    opts.eta = point.eta;
    opts.stop.tol = config.tol;
    opts.stop.metric = stop;
    opts.stop.max_iters = config.max_iters;
    opts.metrics = config.metrics;
    if (stop == StopMetric::kL1) opts.metrics.l1 = true;
    if (stop == StopMetric::kGap) opts.metrics.gap = true;
    opts.record_stride = config.record_stride;
    opts.reference = ref.pair;

    Trajectory traj = Run(*game, DynamicsState::FromPair(init), opts);
    rec.terminated_by = traj.terminated_by;
    rec.final_iter = traj.final_iter;
    rec.final_stop_value = traj.final_stop_value;
    rec.failure_message = traj.failure_message;
    rows = std::move(traj.metrics);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    rec.terminated_by = Termination::kNumericalFailure;
    rec.failure_message = e.what();
  }
  if (write_files) {
    WriteRawCsv((fs::path(raw_dir) / (rec.run_id + ".csv")).string(),
                rec.run_id, rows);
  }
  return rec;
}

nlohmann::json RunToJson(const RunRecord& r) {
  nlohmann::json j;
  j["run_id"] = r.run_id;
  j["config_key"] = r.config_key;
  j["trial"] = r.trial;
  j["seed"] = r.seed;
  j["n"] = r.n;
  j["m"] = r.m;
  j["eta"] = r.eta;
  j["method"] = ToString(r.method);
  j["stop_metric"] = ToString(r.stop_metric);
  j["terminated_by"] = ToString(r.terminated_by);
  j["final_iter"] = r.final_iter;
  if (r.final_stop_value) {
    j["final_stop_value"] = *r.final_stop_value;
  } else {
    j["final_stop_value"] = nullptr;
  }
  j["equilibrium_source"] = ToString(r.equilibrium_source);
  j["unique_hint"] = r.unique_hint;
  j["degenerate_equilibrium"] = r.degenerate_equilibrium;
  j["note"] = r.note;
  j["failure_message"] = r.failure_message;
  return j;
}

RunRecord RunFromJson(const nlohmann::json& j) {
  RunRecord r;
  r.run_id = j.at("run_id").get<std::string>();
  r.config_key = j.at("config_key").get<std::string>();
  r.trial = j.at("trial").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.n = j.at("n").get<int>();
  r.m = j.at("m").get<int>();
  r.eta = j.at("eta").get<double>();
  r.method = ParseMethod(j.at("method").get<std::string>());
  r.stop_metric = ParseStopMetric(j.at("stop_metric").get<std::string>());
  r.terminated_by = ParseTermination(j.at("terminated_by").get<std::string>());
  r.final_iter = j.at("final_iter").get<std::int64_t>();
  if (!j.at("final_stop_value").is_null()) {
    r.final_stop_value = j.at("final_stop_value").get<double>();
  }
  r.equilibrium_source =
      ParseEquilibriumSource(j.at("equilibrium_source").get<std::string>());
  r.unique_hint = j.at("unique_hint").get<bool>();
  r.degenerate_equilibrium = j.at("degenerate_equilibrium").get<bool>();
  r.note = j.at("note").get<std::string>();
  r.failure_message = j.at("failure_message").get<std::string>();
  return r;
}

}  // namespace

std::string ToString(EquilibriumSource source) {
  switch (source) {
    case EquilibriumSource::kNone:
      return "none";
    case EquilibriumSource::kSupplied:
      return "supplied";
    case EquilibriumSource::kKnown:
      return "known";
    case EquilibriumSource::kLinearProgram:
      return "linear_program";
  }
  return "unknown";
}

EquilibriumSource ParseEquilibriumSource(const std::string& text) {
  if (text == "none") return EquilibriumSource::kNone;
  if (text == "supplied") return EquilibriumSource::kSupplied;
  if (text == "known") return EquilibriumSource::kKnown;
  if (text == "linear_program") return EquilibriumSource::kLinearProgram;
  throw InvalidInputError("unknown equilibrium source \"" + text + "\"");
}

std::vector<ConfigPoint> ExpandConfigPoints(const ExperimentConfig& config) {
  std::vector<int> sizes;
  if (ModeOf(config) == CampaignMode::kSizeSweep) {
    sizes = config.n_list;
  } else {
    sizes.push_back(-1);
  }
  const std::vector<double> etas =
      config.eta_list.empty() ? std::vector<double>{config.eta}
                              : config.eta_list;
  int base_n = 2;
  int base_m = 2;
  if (config.game.kind == GameKind::kRandomBilinear) {
    base_n = config.game.n;
    base_m = config.game.m;
  } else if (config.game.kind != GameKind::kQuadratic) {
    const GamePtr game = BuildGame(config.game, 0);
    base_n = game->dim_x();
    base_m = game->dim_y();
  }
  std::vector<ConfigPoint> points;
  for (int size : sizes) {
    for (double eta : etas) {
      for (Method method : MethodsOf(config)) {
        ConfigPoint p;
        p.n = size > 0 ? size : base_n;
        p.m = size > 0 ? size : base_m;
        p.eta = eta;
        p.method = method;
        p.key = ToString(method) + "_n" + std::to_string(p.n) + "_eta" +
                EtaLabel(eta);
        points.push_back(p);
      }
    }
  }
  return points;
}

std::string CampaignResult::RawCsvPath(const RunRecord& run) const {
  return (fs::path(config.out_dir) / "raw" / (run.run_id + ".csv")).string();
}

bool CampaignResult::AllRunsFailed() const {
  return !runs.empty() &&
         std::all_of(runs.begin(), runs.end(),
                     [](const RunRecord& r) { return r.failed(); });
}

std::vector<MetricRow> ReadRawCsv(const std::string& path) {
  const CsvTable table = ReadCsvFile(path);
  if (table.empty()) throw Error("raw CSV " + path + " has no header");
  const auto& header = table.front();
  const std::size_t c_iter = ColumnIndex(header, "iter");
  const std::size_t c_l1 = ColumnIndex(header, "l1");
  const std::size_t c_kl = ColumnIndex(header, "kl");
  const std::size_t c_gap = ColumnIndex(header, "gap");
  const std::size_t c_wall = ColumnIndex(header, "wall_time_s");
  std::vector<MetricRow> rows;
  for (std::size_t i = 1; i < table.size(); ++i) {
    const auto& cells = table[i];
    if (cells.size() != header.size()) {
      throw Error("raw CSV " + path + " has a malformed row");
    }
    MetricRow r;
    r.iter = std::stoll(cells[c_iter]);
    r.l1 = ParseOptionalReal(cells[c_l1]);
    r.kl = ParseOptionalReal(cells[c_kl]);
    r.gap = ParseOptionalReal(cells[c_gap]);
    r.wall_time_s = ParseOptionalReal(cells[c_wall]).value_or(0.0);
    rows.push_back(r);
  }
  return rows;
}

std::vector<AggregateRow> AggregateFromRaw(const CampaignResult& result) {
  std::vector<AggregateRow> out;
  for (const ConfigPoint& p : result.points) {
    std::vector<double> iters;
    std::vector<double> finals;
    int trials = 0;
    int converged = 0;
    for (const RunRecord& run : result.runs) {
      if (run.config_key != p.key) continue;
      ++trials;
      if (run.converged()) ++converged;
      if (run.failed()) continue;
      const std::vector<MetricRow> rows = ReadRawCsv(result.RawCsvPath(run));
      if (rows.empty()) continue;
      const MetricRow& last = rows.back();
      iters.push_back(static_cast<double>(last.iter));
      const auto& value =
          run.stop_metric == StopMetric::kL1 ? last.l1 : last.gap;
      if (value) finals.push_back(*value);
    }
    AggregateRow row;
    row.config_key = p.key;
    row.n = p.n;
    row.eta = p.eta;
    row.method = p.method;
    MeanStd(iters, row.mean_iters, row.std_iters);
    MeanStd(finals, row.final_metric_mean, row.final_metric_std);
    row.converged_fraction =
        trials > 0 ? static_cast<double>(converged) / trials : kNaN;
    out.push_back(row);
  }
  return out;
}

void WriteAggregateCsv(const std::string& path,
                       const std::vector<AggregateRow>& rows) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << kAggregateHeader << "\n";
  for (const AggregateRow& r : rows) {
    out << r.config_key << "," << r.n << "," << FormatReal(r.eta) << ","
        << ToString(r.method) << "," << FormatStat(r.mean_iters) << ","
        << FormatStat(r.std_iters) << "," << FormatStat(r.final_metric_mean)
        << "," << FormatStat(r.final_metric_std) << ","
        << FormatStat(r.converged_fraction) << "\n";
  }
}

std::vector<AggregateRow> ReadAggregateCsv(const std::string& path) {
  const CsvTable table = ReadCsvFile(path);
  if (table.empty()) throw Error("aggregate CSV " + path + " has no header");
  const auto& h = table.front();
  const std::size_t c_key = ColumnIndex(h, "config_key");
  const std::size_t c_n = ColumnIndex(h, "n");
  const std::size_t c_eta = ColumnIndex(h, "eta");
  const std::size_t c_method = ColumnIndex(h, "method");
  const std::size_t c_mi = ColumnIndex(h, "mean_iters");
  const std::size_t c_si = ColumnIndex(h, "std_iters");
  const std::size_t c_fm = ColumnIndex(h, "final_metric_mean");
  const std::size_t c_fs = ColumnIndex(h, "final_metric_std");
  const std::size_t c_cf = ColumnIndex(h, "converged_fraction");
  std::vector<AggregateRow> rows;
  for (std::size_t i = 1; i < table.size(); ++i) {
    const auto& c = table[i];
    if (c.size() != h.size()) {
      throw Error("aggregate CSV " + path + " has a malformed row");
    }
    AggregateRow r;
    r.config_key = c[c_key];
    r.n = std::stoi(c[c_n]);
    r.eta = ParseStat(c[c_eta]);
    r.method = ParseMethod(c[c_method]);
    r.mean_iters = ParseStat(c[c_mi]);
    r.std_iters = ParseStat(c[c_si]);
    r.final_metric_mean = ParseStat(c[c_fm]);
    r.final_metric_std = ParseStat(c[c_fs]);
    r.converged_fraction = ParseStat(c[c_cf]);
    rows.push_back(r);
  }
  return rows;
}

CampaignResult RunExperiment(const ExperimentConfig& config,
                             const HarnessOptions& options) {
  ValidateExperimentConfig(config);
  CampaignResult result;
  result.config = config;
  try {
    result.points = ExpandConfigPoints(config);
  } catch (const InvalidGameError& e) {
    throw ConfigError(e.what());
  }

  const fs::path raw_dir = fs::path(config.out_dir) / "raw";
  if (options.write_files) {
    std::error_code ec;
    fs::create_directories(raw_dir, ec);
    if (ec) {
      throw ConfigError("cannot create output directory " + raw_dir.string() +
                        ": " + ec.message());
    }
  }

  std::vector<Task> tasks;
  for (std::size_t p = 0; p < result.points.size(); ++p) {
    for (int t = 0; t < config.trials; ++t) tasks.push_back({p, t});
  }
  result.runs.resize(tasks.size());

  int jobs = options.jobs > 0
                 ? options.jobs
                 : static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(1, tasks.size())));

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        result.runs[i] =
            RunOne(config, result.points[tasks[i].point], tasks[i].trial,
                   raw_dir.string(), options.write_files);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(tasks.size());
        return;
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  for (const RunRecord& r : result.runs) {
    if (!r.note.empty()) result.notes.push_back(r.run_id + ": " + r.note);
    if (r.failed()) {
      result.notes.push_back(r.run_id + ": numerical failure: " +
                             r.failure_message);
    }
    if (r.degenerate_equilibrium) {
      result.notes.push_back(r.run_id +
                             ": reference equilibrium is degenerate");
    }
  }

  if (options.write_files) {
    result.aggregates = AggregateFromRaw(result);
    WriteAggregateCsv((fs::path(config.out_dir) / "aggregate.csv").string(),
                      result.aggregates);
    nlohmann::json meta;
    meta["config"] = ToJson(config);
    meta["mode"] = ToString(ModeOf(config));
    nlohmann::json points = nlohmann::json::array();
    for (const ConfigPoint& p : result.points) {
      points.push_back({{"key", p.key},
                        {"n", p.n},
                        {"m", p.m},
                        {"eta", p.eta},
                        {"method", ToString(p.method)}});
    }
    meta["points"] = points;
    nlohmann::json runs = nlohmann::json::array();
    for (const RunRecord& r : result.runs) runs.push_back(RunToJson(r));
    meta["runs"] = runs;
    meta["notes"] = result.notes;
    std::ofstream out(fs::path(config.out_dir) / "metadata.json");
    if (!out) throw Error("cannot write metadata.json in " + config.out_dir);
    out << meta.dump(2) << "\n";
  } else {
    // Aggregate from the final values directly when nothing is on disk.
    for (const ConfigPoint& p : result.points) {
      std::vector<double> iters;
      std::vector<double> finals;
      int trials = 0;
      int converged = 0;
      for (const RunRecord& r : result.runs) {
        if (r.config_key != p.key) continue;
        ++trials;
        if (r.converged()) ++converged;
        if (r.failed() || config.max_iters == 0) continue;
        iters.push_back(static_cast<double>(r.final_iter));
        if (r.final_stop_value) finals.push_back(*r.final_stop_value);
      }
      AggregateRow row{p.key, p.n, p.eta, p.method};
      MeanStd(iters, row.mean_iters, row.std_iters);
      MeanStd(finals, row.final_metric_mean, row.final_metric_std);
      row.converged_fraction = static_cast<double>(converged) / trials;
      result.aggregates.push_back(row);
    }
  }
  return result;
}

CampaignResult CompareMethods(ExperimentConfig config,
                              const HarnessOptions& options) {
  if (config.method_list.empty()) {
    config.method_list = {Method::kOmwu, Method::kOgda};
  }
  return RunExperiment(config, options);
}

CampaignResult LoadCampaign(const std::string& out_dir) {
  const fs::path meta_path = fs::path(out_dir) / "metadata.json";
  std::ifstream in(meta_path);
  if (!in) throw ConfigError("no campaign metadata at " + meta_path.string());
  CampaignResult result;
  try {
    nlohmann::json meta;
    in >> meta;
    result.config = ParseExperimentConfig(meta.at("config"));
    result.config.out_dir = out_dir;
    for (const auto& p : meta.at("points")) {
      ConfigPoint cp;
      cp.key = p.at("key").get<std::string>();
      cp.n = p.at("n").get<int>();
      cp.m = p.at("m").get<int>();
      cp.eta = p.at("eta").get<double>();
      cp.method = ParseMethod(p.at("method").get<std::string>());
      result.points.push_back(cp);
    }
    for (const auto& r : meta.at("runs")) result.runs.push_back(RunFromJson(r));
    result.notes = meta.at("notes").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed campaign metadata in " + out_dir + ": " +
                      e.what());
  }
  result.aggregates =
      ReadAggregateCsv((fs::path(out_dir) / "aggregate.csv").string());
  return result;
}

std::vector<TrajectorySeries> TrajectoryVisual(
    const GameOracle& game, Method method, const std::vector<double>& eta_list,
    const StrategyPair& init, const StopRule& stop, int record_stride,
    const std::optional<StrategyPair>& reference, const std::string& out_dir) {
  if (game.dim_x() != 2 || game.dim_y() != 2) {
    throw ConfigError("trajectory plots need a 2x2 game");
  }
  if (eta_list.empty()) throw ConfigError("trajectory plots need step sizes");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw ConfigError("cannot create " + out_dir + ": " + ec.message());

  std::vector<TrajectorySeries> all;
  std::vector<PlotSeries> plot;
  for (double eta : eta_list) {
    RunOptions opts;
    opts.method = method;
    opts.eta = eta;
    opts.stop = stop;
    opts.record_stride = record_stride;
    opts.keep_states = true;
    opts.reference = reference;
    opts.metrics = MetricSelection{reference.has_value(), false, !reference};
    const Trajectory traj = Run(game, DynamicsState::FromPair(init), opts);

    TrajectorySeries s;
    s.eta = eta;
    s.terminated_by = traj.terminated_by;
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
      s.iters.push_back(traj.metrics[i].iter);
      s.x1.push_back(traj.states[i].x_cur[0]);
      s.y1.push_back(traj.states[i].y_cur[0]);
    }
    const fs::path csv = fs::path(out_dir) / ("trajectory_eta" + EtaLabel(eta) + ".csv");
    std::ofstream out(csv);
    if (!out) throw Error("cannot write " + csv.string());
    out << "iter,x1,y1\n";
    for (std::size_t i = 0; i < s.iters.size(); ++i) {
      out << s.iters[i] << "," << FormatReal(s.x1[i]) << ","
          << FormatReal(s.y1[i]) << "\n";
    }
    plot.push_back({"eta=" + EtaLabel(eta), s.x1, s.y1});
    all.push_back(std::move(s));
  }
  PlotOptions po;
  po.title = ToString(method) + " trajectories";
  po.x_label = "x1";
  po.y_label = "y1";
  po.arrows = true;
  WriteLinePlotSvg((fs::path(out_dir) / "trajectory.svg").string(), plot, po);
  return all;
}

}  // namespace mmx
