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

#include "mmx/game_spec.h"

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mmx/errors.h"

namespace mmx {
namespace {

Matrix MatrixFromJson(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) {
    throw InvalidGameError("\"A\" must be a non-empty array of rows");
  }
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  for (const auto& row : j) {
    if (!row.is_array() || row.empty()) {
      throw InvalidGameError("each row of \"A\" must be a non-empty array");
    }
    if (cols == 0) cols = row.size();
    if (row.size() != cols) {
      throw InvalidGameError("rows of \"A\" have different lengths");
    }
  }
  Matrix a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < cols; ++k) {
      if (!j[i][k].is_number()) {
        throw InvalidGameError("entries of \"A\" must be numbers");
      }
      a(i, k) = j[i][k].get<double>();
    }
  }
  return a;
}

nlohmann::json MatrixToJson(const Matrix& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < a.cols(); ++k) row.push_back(a(i, k));
    rows.push_back(row);
  }
  return rows;
}

Matrix ResolvePayoff(const GameSpec& spec) {
  if (spec.payoff) return *spec.payoff;
  if (spec.payoff_file) return LoadMatrixCsv(*spec.payoff_file);
  throw InvalidGameError("game kind " + ToString(spec.kind) +
                         " needs \"A\" or \"A_file\"");
}

}  // namespace

std::string ToString(GameKind kind) {
  switch (kind) {
    case GameKind::kBilinear:
      return "bilinear";
    case GameKind::kRandomBilinear:
      return "random_bilinear";
    case GameKind::kQuadratic:
      return "quadratic";
    case GameKind::kRegularizedBilinear:
      return "regularized_bilinear";
  }
  return "unknown";
}

GameKind ParseGameKind(const std::string& text) {
  if (text == "bilinear") return GameKind::kBilinear;
  if (text == "random_bilinear") return GameKind::kRandomBilinear;
  if (text == "quadratic") return GameKind::kQuadratic;
  if (text == "regularized_bilinear") return GameKind::kRegularizedBilinear;
  throw InvalidGameError("unknown game kind \"" + text + "\"");
}

GameSpec ParseGameSpec(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidGameError("game spec must be an object");
  static const std::set<std::string> kKnown = {"kind", "A",    "A_file", "n",
                                               "m",    "seed", "alpha"};
  for (const auto& [key, _] : j.items()) {
    if (!kKnown.count(key)) {
      throw InvalidGameError("unknown key \"" + key + "\" in game spec");
    }
  }
  if (!j.contains("kind") || !j["kind"].is_string()) {
    throw InvalidGameError("game spec needs a string \"kind\"");
  }
  GameSpec spec;
  spec.kind = ParseGameKind(j["kind"].get<std::string>());
  try {
    if (j.contains("A")) spec.payoff = MatrixFromJson(j["A"]);
    if (j.contains("A_file")) spec.payoff_file = j["A_file"].get<std::string>();
    if (j.contains("n")) spec.n = j["n"].get<int>();
    if (j.contains("m")) spec.m = j["m"].get<int>();
    if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("alpha")) spec.alpha = j["alpha"].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidGameError(std::string("bad game spec field: ") + e.what());
  }
  if (spec.kind == GameKind::kRandomBilinear) {
    if (spec.n < 1) throw InvalidGameError("random_bilinear needs \"n\" >= 1");
    if (spec.m == 0) spec.m = spec.n;
  }
  if (spec.payoff && spec.payoff_file) {
    throw InvalidGameError("give either \"A\" or \"A_file\", not both");
  }
  return spec;
}

nlohmann::json ToJson(const GameSpec& spec) {
  nlohmann::json j;
  j["kind"] = ToString(spec.kind);
  if (spec.payoff) j["A"] = MatrixToJson(*spec.payoff);
  if (spec.payoff_file) j["A_file"] = *spec.payoff_file;
  if (spec.kind == GameKind::kRandomBilinear) {
    j["n"] = spec.n;
    j["m"] = spec.m;
  }
  if (spec.seed) j["seed"] = *spec.seed;
  if (spec.kind == GameKind::kRegularizedBilinear) j["alpha"] = spec.alpha;
  return j;
}

GamePtr BuildGame(const GameSpec& spec,
                  std::optional<std::uint64_t> seed_override) {
  switch (spec.kind) {
    case GameKind::kBilinear:
      return MakeBilinear(ResolvePayoff(spec));
    case GameKind::kRegularizedBilinear:
      return MakeRegularizedBilinear(ResolvePayoff(spec), spec.alpha);
    case GameKind::kQuadratic:
      return MakeQuadraticExample();
    case GameKind::kRandomBilinear: {
      const auto seed = seed_override ? seed_override : spec.seed;
      return MakeRandomBilinear(spec.n, spec.m, seed.value_or(0));
    }
  }
  throw InvalidGameError("unhandled game kind");
}

Matrix ParseMatrixCsv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t", used) != std::string::npos) {
          throw std::invalid_argument(cell);
        }
      } catch (const std::exception&) {
        throw InvalidGameError("matrix CSV line " + std::to_string(line_no) +
                               ": cannot parse \"" + cell + "\"");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw InvalidGameError("matrix CSV line " + std::to_string(line_no) +
                             " has a different number of columns");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InvalidGameError("matrix CSV is empty");
  Matrix a(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t k = 0; k < rows[i].size(); ++k) a(i, k) = rows[i][k];
  }
  return a;
}

Matrix LoadMatrixCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidGameError("cannot open matrix file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseMatrixCsv(buffer.str());
}

}  // namespace mmx
