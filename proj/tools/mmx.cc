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

// Command-line front end: campaigns (run, compare, sweep), equilibrium and
// spectral analysis (kkt, spectral) and plot-data rendering (plot).
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure in all
// trials (or of the single analysis requested), 3 internal error.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mmx/dynamics.h"
#include "mmx/equilibrium.h"
#include "mmx/errors.h"
#include "mmx/experiment_config.h"
#include "mmx/game_spec.h"
#include "mmx/harness.h"
#include "mmx/plot_data.h"
#include "mmx/spectral.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitInternal = 3;

using nlohmann::json;

// Game selection shared by every subcommand.
struct GameFlags {
  std::string spec_file;
  std::string kind;
  std::string payoff;  // JSON rows
  std::string payoff_file;
  std::optional<int> n;
  std::optional<int> m;
  std::optional<std::uint64_t> seed;
  std::optional<double> alpha;

  void Register(CLI::App* app) {
    app->add_option("--game-spec", spec_file, "Game spec JSON file");
    app->add_option("--game", kind,
                    "Game kind: bilinear, random_bilinear, quadratic, "
                    "regularized_bilinear");
    app->add_option("--A", payoff, "Payoff matrix as JSON rows");
    app->add_option("--A-file", payoff_file, "Payoff matrix CSV file");
    app->add_option("--n", n, "Rows (random_bilinear)");
    app->add_option("--m", m, "Columns (random_bilinear; defaults to n)");
    app->add_option("--game-seed", seed, "Fixed seed for random games");
    app->add_option("--alpha", alpha, "Regularization weight");
  }

  bool Given() const {
    return !spec_file.empty() || !kind.empty() || !payoff.empty() ||
           !payoff_file.empty() || n || m || seed || alpha;
  }

  // Overlays the flags on `base` (a game spec object, possibly empty).
  json Apply(json base) const {
    if (!spec_file.empty()) base = ReadJson(spec_file);
    if (!base.is_object()) base = json::object();
    if (!kind.empty()) base["kind"] = kind;
    if (!payoff.empty()) {
      try {
        base["A"] = json::parse(payoff);
      } catch (const json::exception& e) {
        throw mmx::ConfigError(std::string("--A is not valid JSON: ") +
                               e.what());
      }
    }
    if (!payoff_file.empty()) base["A_file"] = payoff_file;
    if (n) base["n"] = *n;
    if (m) base["m"] = *m;
    if (seed) base["seed"] = *seed;
    if (alpha) base["alpha"] = *alpha;
    return base;
  }

  static json ReadJson(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw mmx::ConfigError("cannot open " + path);
    try {
      return json::parse(in);
    } catch (const json::exception& e) {
      throw mmx::ConfigError(path + " is not valid JSON: " + e.what());
    }
  }
};

// Campaign flags; each one given overrides the config file.
struct CampaignFlags {
  std::string config_file;
  GameFlags game;
  std::string method;
  std::string methods;
  std::optional<double> eta;
  std::vector<double> eta_list;
  std::vector<int> n_list;
  std::optional<double> tol;
  std::optional<std::int64_t> max_iters;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::string metrics;
  std::string stop_metric;
  std::optional<int> record_stride;
  std::string out;
  int jobs = 0;

  void Register(CLI::App* app, bool sweep) {
    app->add_option("--config", config_file, "Campaign config JSON file");
    game.Register(app);
    app->add_option("--method", method, "omwu, ogda or mwu");
    app->add_option("--methods", methods, "Comma-separated method list");
    app->add_option("--eta", eta, "Step size");
    if (sweep) {
      app->add_option("--eta-list", eta_list, "Step-size sweep")->delimiter(',');
      app->add_option("--n-list", n_list, "Size sweep")->delimiter(',');
    }
    app->add_option("--tol", tol, "Stop tolerance");
    app->add_option("--max-iters", max_iters, "Iteration cap");
    app->add_option("--trials", trials, "Trials per configuration");
    app->add_option("--seed", seed, "Base seed; trial t uses seed + t");
    app->add_option("--metrics", metrics, "Subset of l1,kl,gap");
    app->add_option("--stop-metric", stop_metric, "l1 or gap");
    app->add_option("--record-stride", record_stride, "Row stride");
    app->add_option("--out", out, "Output directory");
    app->add_option("--jobs", jobs,
                    "Worker threads (default: available cores)");
  }

  mmx::ExperimentConfig Build() const {
    json j = config_file.empty() ? json::object()
                                 : GameFlags::ReadJson(config_file);
    if (!j.is_object()) throw mmx::ConfigError("config must be an object");
    if (game.Given() || !j.contains("game")) {
      json g = game.Apply(j.value("game", json::object()));
      if (!g.contains("kind")) g["kind"] = "quadratic";
      j["game"] = g;
    }
    if (!method.empty()) j["method"] = method;
    if (!methods.empty()) {
      std::vector<std::string> list;
      std::stringstream in(methods);
      std::string item;
      while (std::getline(in, item, ',')) {
        if (!item.empty()) list.push_back(item);
      }
      j["method_list"] = list;
    }
    if (eta) j["eta"] = *eta;
    if (!eta_list.empty()) j["eta_list"] = eta_list;
    if (!n_list.empty()) j["n_list"] = n_list;
    if (tol) j["tol"] = *tol;
    if (max_iters) j["max_iters"] = *max_iters;
    if (trials) j["trials"] = *trials;
    if (seed) j["base_seed"] = *seed;
    if (!metrics.empty()) {
      std::vector<std::string> list;
      std::stringstream in(metrics);
      std::string item;
      while (std::getline(in, item, ',')) {
        if (!item.empty()) list.push_back(item);
      }
      j["metrics"] = list;
    }
    if (!stop_metric.empty()) j["stop_metric"] = stop_metric;
    if (record_stride) j["record_stride"] = *record_stride;
    if (!out.empty()) j["out_dir"] = out;
    return mmx::ParseExperimentConfig(j);
  }
};

std::string Stat(double v) {
  if (std::isnan(v)) return "-";
  std::ostringstream s;
  s << v;
  return s.str();
}

int ReportCampaign(const mmx::CampaignResult& result) {
  std::cout << "config_key\tmean_iters\tstd_iters\tfinal_metric_mean\t"
               "converged_fraction\n";
  for (const auto& a : result.aggregates) {
    std::cout << a.config_key << "\t" << Stat(a.mean_iters) << "\t"
              << Stat(a.std_iters) << "\t" << Stat(a.final_metric_mean) << "\t"
              << Stat(a.converged_fraction) << "\n";
  }
  for (const auto& note : result.notes) std::cerr << "note: " << note << "\n";
  std::cout << "wrote " << result.config.out_dir << "\n";
  if (result.AllRunsFailed()) {
    std::cerr << "error: every run ended in numerical failure\n";
    return kExitNumerical;
  }
  return kExitOk;
}

mmx::Vector ParseVector(const std::string& text, const char* what) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      values.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw mmx::ConfigError(std::string("cannot parse ") + what + " entry \"" +
                             item + "\"");
    }
  }
  return Eigen::Map<mmx::Vector>(values.data(),
                                 static_cast<Eigen::Index>(values.size()));
}

std::vector<int> ParseIndexList(const std::string& text) {
  std::vector<int> idx;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      idx.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw mmx::ConfigError("cannot parse support index \"" + item + "\"");
    }
  }
  return idx;
}

// Point flags for kkt / spectral; falls back to a known or LP equilibrium.
struct PointFlags {
  std::string x;
  std::string y;

  void Register(CLI::App* app) {
    app->add_option("--x", x, "x* as comma-separated probabilities");
    app->add_option("--y", y, "y* as comma-separated probabilities");
  }

  mmx::StrategyPair Resolve(const mmx::GameOracle& game) const {
    if (!x.empty() || !y.empty()) {
      if (x.empty() || y.empty()) {
        throw mmx::ConfigError("give both --x and --y");
      }
      try {
        return {mmx::SimplexPoint(ParseVector(x, "--x")),
                mmx::SimplexPoint(ParseVector(y, "--y"))};
      } catch (const mmx::InvalidInputError& e) {
        throw mmx::ConfigError(e.what());
      }
    }
    if (auto known = game.KnownEquilibrium()) {
      return {known->first, known->second};
    }
    if (const auto* bil = game.bilinear(); bil && bil->alpha == 0.0) {
      const auto sol = mmx::SolveBilinear(bil->payoff);
      return {sol.x, sol.y};
    }
    throw mmx::ConfigError(
        "no equilibrium known for this game; pass --x and --y");
  }
};

mmx::GamePtr BuildGameFromFlags(const GameFlags& flags) {
  if (!flags.Given()) throw mmx::ConfigError("select a game with --game");
  try {
    return mmx::BuildGame(mmx::ParseGameSpec(flags.Apply(json::object())));
  } catch (const mmx::InvalidGameError& e) {
    throw mmx::ConfigError(e.what());
  }
}

void Emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw mmx::ConfigError("cannot write " + out_path);
  out << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mmx: min-max dynamics on probability simplices"};
  app.require_subcommand(1);

  CampaignFlags run_flags;
  auto* run = app.add_subcommand("run", "Run a campaign");
  run_flags.Register(run, /*sweep=*/true);

  CampaignFlags compare_flags;
  auto* compare = app.add_subcommand(
      "compare", "Paired runs of several methods (default omwu,ogda)");
  compare_flags.Register(compare, /*sweep=*/true);

  CampaignFlags sweep_flags;
  auto* sweep = app.add_subcommand(
      "sweep", "Step-size or size sweep (needs --eta-list or --n-list)");
  sweep_flags.Register(sweep, /*sweep=*/true);

  GameFlags kkt_game;
  PointFlags kkt_point;
  double kkt_tol = mmx::kDefaultKktTol;
  double kkt_threshold = mmx::kDefaultSupportThreshold;
  std::string kkt_out;
  auto* kkt = app.add_subcommand("kkt", "Check KKT conditions at a point");
  kkt_game.Register(kkt);
  kkt_point.Register(kkt);
  kkt->add_option("--tol", kkt_tol, "KKT tolerance");
  kkt->add_option("--threshold", kkt_threshold, "Support threshold");
  kkt->add_option("--out", kkt_out, "Output JSON file (default stdout)");

  GameFlags sp_game;
  PointFlags sp_point;
  double sp_eta = 0.05;
  double sp_margin = mmx::kDefaultContractionMargin;
  std::string sp_support_x;
  std::string sp_support_y;
  bool sp_dump = false;
  std::string sp_out;
  auto* spectral =
      app.add_subcommand("spectral", "Spectral stability report at a point");
  sp_game.Register(spectral);
  sp_point.Register(spectral);
  spectral->add_option("--eta", sp_eta, "Step size");
  spectral->add_option("--margin", sp_margin, "Contraction margin");
  spectral->add_option("--support-x", sp_support_x,
                       "Explicit Supp(x*) indices (comma-separated)");
  spectral->add_option("--support-y", sp_support_y,
                       "Explicit Supp(y*) indices (comma-separated)");
  spectral->add_flag("--dump-matrices", sp_dump,
                     "Include J, J_new and J_small");
  spectral->add_option("--out", sp_out, "Output JSON file (default stdout)");

  std::string plot_campaign;
  std::string plot_kind;
  std::string plot_out;
  bool plot_svg = false;
  CampaignFlags traj_flags;
  auto* plot = app.add_subcommand(
      "plot", "Plot data from a campaign directory, or phase-plane "
              "trajectories with --kind trajectory");
  plot->add_option("--campaign", plot_campaign, "Campaign output directory");
  plot->add_option("--kind", plot_kind,
                   "iters_vs_n, error_vs_iters, kl_vs_iters, method_compare "
                   "or trajectory")
      ->required();
  plot->add_option("--plot-dir", plot_out,
                   "Directory for plot files (default <campaign>/plots)");
  plot->add_flag("--svg", plot_svg, "Also write an SVG");
  traj_flags.Register(plot, /*sweep=*/true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) {
      return ReportCampaign(
          mmx::RunExperiment(run_flags.Build(), {run_flags.jobs, true}));
    }
    if (*compare) {
      return ReportCampaign(mmx::CompareMethods(compare_flags.Build(),
                                                {compare_flags.jobs, true}));
    }
    if (*sweep) {
      const mmx::ExperimentConfig config = sweep_flags.Build();
      if (mmx::ModeOf(config) == mmx::CampaignMode::kSingle) {
        throw mmx::ConfigError("sweep needs --eta-list or --n-list");
      }
      return ReportCampaign(
          mmx::RunExperiment(config, {sweep_flags.jobs, true}));
    }
    if (*kkt) {
      const mmx::GamePtr game = BuildGameFromFlags(kkt_game);
      const mmx::StrategyPair p = kkt_point.Resolve(*game);
      const mmx::KktReport report =
          mmx::CheckKkt(*game, p.x, p.y, kkt_tol, kkt_threshold);
      Emit(mmx::ToJson(report), kkt_out);
      return kExitOk;
    }
    if (*spectral) {
      const mmx::GamePtr game = BuildGameFromFlags(sp_game);
      const mmx::StrategyPair p = sp_point.Resolve(*game);
      std::optional<mmx::Supports> supports;
      if (!sp_support_x.empty() || !sp_support_y.empty()) {
        supports = mmx::DetectSupports(p.x, p.y);
        if (!sp_support_x.empty()) supports->x = ParseIndexList(sp_support_x);
        if (!sp_support_y.empty()) supports->y = ParseIndexList(sp_support_y);
      }
      const mmx::SpectralReport report =
          mmx::AnalyzeStability(*game, p.x, p.y, sp_eta, sp_margin, supports);
      for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
      Emit(mmx::ToJson(report, sp_dump), sp_out);
      return kExitOk;
    }
    if (*plot) {
      if (plot_kind == "trajectory") {
        mmx::ExperimentConfig config = traj_flags.Build();
        const mmx::GamePtr game = mmx::BuildGame(config.game, config.base_seed);
        mmx::StrategyPair init = config.init.value_or(mmx::StrategyPair{
            mmx::SimplexPoint({0.5, 0.5}), mmx::SimplexPoint({0.5, 0.5})});
        std::optional<mmx::StrategyPair> reference = config.equilibrium;
        if (!reference) {
          if (auto known = game->KnownEquilibrium()) {
            reference = mmx::StrategyPair{known->first, known->second};
          }
        }
        mmx::StopRule stop;
        stop.tol = config.tol;
        stop.max_iters = config.max_iters;
        stop.metric = reference ? mmx::StopMetric::kL1 : mmx::StopMetric::kGap;
        const std::vector<double> etas =
            config.eta_list.empty() ? std::vector<double>{config.eta}
                                    : config.eta_list;
        const std::string dir =
            plot_out.empty() ? config.out_dir + "/trajectory" : plot_out;
        mmx::TrajectoryVisual(*game, config.method, etas, init, stop,
                              config.record_stride, reference, dir);
        std::cout << "wrote " << dir << "\n";
        return kExitOk;
      }
      if (plot_campaign.empty()) {
        throw mmx::ConfigError("plot needs --campaign <dir>");
      }
      const mmx::CampaignResult result = mmx::LoadCampaign(plot_campaign);
      const std::string dir =
          plot_out.empty() ? plot_campaign + "/plots" : plot_out;
      std::cout << "wrote "
                << mmx::EmitPlotData(result, mmx::ParsePlotKind(plot_kind),
                                     dir, plot_svg)
                << "\n";
      return kExitOk;
    }
  } catch (const mmx::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const mmx::InvalidGameError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const mmx::InvalidParameterError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const mmx::InvalidInputError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const mmx::InvalidEquilibriumError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const mmx::MissingMetricError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const mmx::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const mmx::SolverFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const mmx::EigenSolverFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
