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

#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "mmx/errors.h"

namespace mmx {
namespace {

template <typename T>
T Get(const nlohmann::json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("config field \"") + key +
                      "\" has the wrong type");
  }
}

MetricSelection MetricsFromList(const std::vector<std::string>& names) {
  MetricSelection m{false, false, false};
  for (const auto& name : names) {
    if (name == "l1") {
      m.l1 = true;
    } else if (name == "kl") {
      m.kl = true;
    } else if (name == "gap") {
      m.gap = true;
    } else {
      throw ConfigError("unknown metric \"" + name + "\"");
    }
  }
  return m;
}

StrategyPair PairFromJson(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || j.size() != 2 || !j.contains("x") || !j.contains("y")) {
    throw ConfigError(std::string("\"") + key +
                      "\" must be an object with exactly \"x\" and \"y\"");
  }
  auto vec = [&](const char* which) {
    std::vector<double> v;
    try {
      v = j.at(which).get<std::vector<double>>();
    } catch (const nlohmann::json::exception&) {
      throw ConfigError(std::string("\"") + key + "." + which +
                        "\" must be a list of numbers");
    }
    return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()))
        .eval();
  };
  try {
    return {SimplexPoint(vec("x")), SimplexPoint(vec("y"))};
  } catch (const InvalidInputError& e) {
    throw ConfigError(std::string("\"") + key + "\": " + e.what());
  }
}

nlohmann::json PairToJson(const StrategyPair& p) {
  auto vec = [](const SimplexPoint& s) {
    return std::vector<double>(s.probs().data(),
                               s.probs().data() + s.probs().size());
  };
  return {{"x", vec(p.x)}, {"y", vec(p.y)}};
}

// Equilibria can be derived for the quadratic game and for zero-alpha
// bilinear payoffs (linear program).
bool EquilibriumDerivable(const GameSpec& spec) {
  switch (spec.kind) {
    case GameKind::kQuadratic:
    case GameKind::kBilinear:
    case GameKind::kRandomBilinear:
      return true;
    case GameKind::kRegularizedBilinear:
      return spec.alpha == 0.0;
  }
  return false;
}

std::pair<int, int> GameDims(const GameSpec& spec) {
  switch (spec.kind) {
    case GameKind::kQuadratic:
      return {2, 2};
    case GameKind::kRandomBilinear:
      return {spec.n, spec.m};
    case GameKind::kBilinear:
    case GameKind::kRegularizedBilinear: {
      try {
        const Matrix a =
            spec.payoff ? *spec.payoff
                        : (spec.payoff_file ? LoadMatrixCsv(*spec.payoff_file)
                                            : Matrix());
        if (a.size() == 0) {
          throw ConfigError("game kind " + ToString(spec.kind) +
                            " needs \"A\" or \"A_file\"");
        }
        return {static_cast<int>(a.rows()), static_cast<int>(a.cols())};
      } catch (const InvalidGameError& e) {
        throw ConfigError(e.what());
      }
    }
  }
  return {0, 0};
}

}  // namespace

std::string ToString(CampaignMode mode) {
  switch (mode) {
    case CampaignMode::kSingle:
      return "single";
    case CampaignMode::kEtaSweep:
      return "eta_sweep";
    case CampaignMode::kSizeSweep:
      return "size_sweep";
  }
  return "unknown";
}

CampaignMode ModeOf(const ExperimentConfig& config) {
  if (!config.eta_list.empty()) return CampaignMode::kEtaSweep;
  if (!config.n_list.empty()) return CampaignMode::kSizeSweep;
  return CampaignMode::kSingle;
}

std::vector<Method> MethodsOf(const ExperimentConfig& config) {
  if (!config.method_list.empty()) return config.method_list;
  return {config.method};
}

MetricSelection ParseMetricList(const std::string& text) {
  std::vector<std::string> names;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) names.push_back(item);
  }
  return MetricsFromList(names);
}

std::string ToString(const MetricSelection& metrics) {
  std::string out;
  auto add = [&out](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ",";
    out += name;
  };
  add(metrics.l1, "l1");
  add(metrics.kl, "kl");
  add(metrics.gap, "gap");
  return out;
}

ExperimentConfig ParseExperimentConfig(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> kKnown = {
      "game",      "method",      "method_list",   "eta",
      "eta_list",  "n_list",      "trials",        "base_seed",
      "max_iters", "tol",         "stop_metric",   "metrics",
      "record_stride", "out_dir", "equilibrium",   "init"};
  for (const auto& [key, _] : j.items()) {
    if (!kKnown.count(key)) {
      throw ConfigError("unknown config key \"" + key + "\"");
    }
  }
  if (!j.contains("game")) throw ConfigError("config needs a \"game\" object");

  ExperimentConfig c;
  try {
    c.game = ParseGameSpec(j["game"]);
  } catch (const InvalidGameError& e) {
    throw ConfigError(e.what());
  }
  try {
    if (j.contains("method")) c.method = ParseMethod(Get<std::string>(j, "method"));
    if (j.contains("method_list")) {
      for (const auto& name : Get<std::vector<std::string>>(j, "method_list")) {
        c.method_list.push_back(ParseMethod(name));
      }
      if (c.method_list.empty()) {
        throw ConfigError("\"method_list\" must not be empty");
      }
    }
    if (j.contains("stop_metric")) {
      c.stop_metric = ParseStopMetric(Get<std::string>(j, "stop_metric"));
    }
  } catch (const InvalidParameterError& e) {
    throw ConfigError(e.what());
  }
  if (j.contains("eta")) c.eta = Get<double>(j, "eta");
  if (j.contains("eta_list")) c.eta_list = Get<std::vector<double>>(j, "eta_list");
  if (j.contains("n_list")) c.n_list = Get<std::vector<int>>(j, "n_list");
  if (j.contains("trials")) c.trials = Get<int>(j, "trials");
  if (j.contains("base_seed")) c.base_seed = Get<std::uint64_t>(j, "base_seed");
  if (j.contains("max_iters")) c.max_iters = Get<std::int64_t>(j, "max_iters");
  if (j.contains("tol")) c.tol = Get<double>(j, "tol");
  if (j.contains("metrics")) {
    c.metrics = MetricsFromList(Get<std::vector<std::string>>(j, "metrics"));
  }
  if (j.contains("record_stride")) c.record_stride = Get<int>(j, "record_stride");
  if (j.contains("out_dir")) c.out_dir = Get<std::string>(j, "out_dir");
  if (j.contains("equilibrium")) {
    c.equilibrium = PairFromJson(j["equilibrium"], "equilibrium");
  }
  if (j.contains("init")) c.init = PairFromJson(j["init"], "init");
  ValidateExperimentConfig(c);
  return c;
}

ExperimentConfig LoadExperimentConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " +
                      e.what());
  }
  return ParseExperimentConfig(j);
}

nlohmann::json ToJson(const ExperimentConfig& c) {
  nlohmann::json j;
  j["game"] = ToJson(c.game);
  j["method"] = ToString(c.method);
  if (!c.method_list.empty()) {
    std::vector<std::string> names;
    for (Method m : c.method_list) names.push_back(ToString(m));
    j["method_list"] = names;
  }
  j["eta"] = c.eta;
  if (!c.eta_list.empty()) j["eta_list"] = c.eta_list;
  if (!c.n_list.empty()) j["n_list"] = c.n_list;
  j["trials"] = c.trials;
  j["base_seed"] = c.base_seed;
  j["max_iters"] = c.max_iters;
  j["tol"] = c.tol;
  if (c.stop_metric) j["stop_metric"] = ToString(*c.stop_metric);
  std::vector<std::string> metrics;
  if (c.metrics.l1) metrics.push_back("l1");
  if (c.metrics.kl) metrics.push_back("kl");
  if (c.metrics.gap) metrics.push_back("gap");
  j["metrics"] = metrics;
  j["record_stride"] = c.record_stride;
  j["out_dir"] = c.out_dir;
  if (c.equilibrium) j["equilibrium"] = PairToJson(*c.equilibrium);
  if (c.init) j["init"] = PairToJson(*c.init);
  return j;
}

void ValidateExperimentConfig(const ExperimentConfig& c) {
  if (!c.eta_list.empty() && !c.n_list.empty()) {
    throw ConfigError("give at most one of \"eta_list\" and \"n_list\"");
  }
  auto check_eta = [](double eta) {
    if (!(eta > 0.0) || !std::isfinite(eta)) {
      throw ConfigError("step sizes must be positive and finite");
    }
  };
  check_eta(c.eta);
  for (double eta : c.eta_list) check_eta(eta);
  if (c.trials < 1) throw ConfigError("\"trials\" must be >= 1");
  if (c.max_iters < 0) throw ConfigError("\"max_iters\" must be >= 0");
  if (!(c.tol >= 0.0)) throw ConfigError("\"tol\" must be >= 0");
  if (c.record_stride < 1) throw ConfigError("\"record_stride\" must be >= 1");
  if (c.out_dir.empty()) throw ConfigError("\"out_dir\" must not be empty");
  if (!c.n_list.empty()) {
    if (c.game.kind != GameKind::kRandomBilinear) {
      throw ConfigError("\"n_list\" needs a random_bilinear game");
    }
    for (int n : c.n_list) {
      if (n < 1) throw ConfigError("entries of \"n_list\" must be >= 1");
    }
    if (c.equilibrium || c.init) {
      throw ConfigError(
          "\"equilibrium\" and \"init\" cannot be combined with \"n_list\"");
    }
  }
  const auto [n, m] = GameDims(c.game);
  for (const auto* pair : {&c.equilibrium, &c.init}) {
    if (*pair && ((*pair)->x.size() != n || (*pair)->y.size() != m)) {
      throw ConfigError("strategy dimensions do not match the game");
    }
  }
  const bool has_reference = c.equilibrium || EquilibriumDerivable(c.game);
  const bool wants_reference =
      c.metrics.l1 || c.metrics.kl || c.stop_metric == StopMetric::kL1;
  if (wants_reference && !has_reference) {
    throw ConfigError(
        "l1 / kl metrics need an equilibrium; supply \"equilibrium\" or use "
        "\"stop_metric\": \"gap\" with \"metrics\": [\"gap\"]");
  }
}

}  // namespace mmx
