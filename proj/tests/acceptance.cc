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

// Acceptance checks 1-11. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. Optional arguments select a subset, e.g.
// `acceptance 1 5 9`.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mmx/dynamics.h"
#include "mmx/eig.h"
#include "mmx/equilibrium.h"
#include "mmx/errors.h"
#include "mmx/harness.h"
#include "mmx/rng.h"
#include "mmx/spectral.h"
#include "test_util.h"

namespace mmx {
namespace {

namespace fs = std::filesystem;
using Cx = std::complex<double>;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, double a, double b = 0, double c = 0,
                double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c, d);
  return buf;
}

double DistanceToList(Cx v, const ComplexList& list) {
  double best = INFINITY;
  for (const Cx& u : list) best = std::min(best, std::abs(u - v));
  return best;
}

// 1. Uniform equilibria of matching pennies and rock-paper-scissors are
// fixed points of OMWU.
Outcome FixedPointInvariance() {
  double worst = 0.0;
  for (const Matrix& a : {MatchingPennies(), RockPaperScissors()}) {
    const auto g = MakeBilinear(a);
    const int n = static_cast<int>(a.rows());
    const StrategyPair u{SimplexPoint::Uniform(n), SimplexPoint::Uniform(n)};
    for (double eta : {0.01, 1.0}) {
      DynamicsState s = DynamicsState::FromPair(u);
      for (int t = 0; t < 100; ++t) s = OmwuStep(s, *g, eta);
      worst = std::max(worst, L1Error(s, u));
    }
  }
  return {worst <= 1e-10, Fmt("max l1 drift %.3g", worst)};
}

// 2. OMWU converges on the quadratic game from Dirichlet starts: final l1
// and KL after the iteration budget.
Outcome QuadraticConvergence() {
  const auto g = MakeQuadraticExample();
  const StrategyPair ref{SimplexPoint({0.0, 1.0}), SimplexPoint({0.0, 1.0})};
  std::ostringstream detail;
  bool pass = true;
  for (double eta : {0.01, 0.1, 1.0, 10.0}) {
    int ok = 0;
    double worst_l1 = 0.0, worst_kl = 0.0;
    for (int t = 0; t < 10; ++t) {
      Rng rng(7 + t, 1);
      const auto init = DynamicsState::FromPair(
          ClampAwayFromBoundary(rng.DirichletOnes(2)),
          ClampAwayFromBoundary(rng.DirichletOnes(2)));
      RunOptions o;
      o.eta = eta;
      // Runs the whole budget: near the boundary KL is about l1 / 2, so
      // stopping at the l1 tolerance would leave KL far above its bound.
      o.stop.tol = 0.0;
      o.stop.metric = StopMetric::kL1;
      o.stop.max_iters = 200000;
      o.metrics = {true, true, false};
      o.record_stride = 1 << 30;
      o.reference = ref;
      const Trajectory tr = Run(*g, init, o);
      const MetricRow& last = tr.metrics.back();
      const double l1 = last.l1.value_or(INFINITY);
      const double kl = last.kl.value_or(INFINITY);
      worst_l1 = std::max(worst_l1, l1);
      worst_kl = std::max(worst_kl, kl);
      if (l1 <= 1e-4 && kl <= 1e-6) ++ok;
    }
    if (ok < 10) pass = false;
    detail << "eta=" << eta << ": " << ok << "/10 ok, worst l1 "
           << Fmt("%.3g", worst_l1) << ", worst KL " << Fmt("%.3g", worst_kl)
           << "; ";
  }
  return {pass, detail.str()};
}

double Spearman(const std::vector<double>& a, const std::vector<double>& b) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
      std::size_t j = i;
      while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
      for (std::size_t k = i; k <= j; ++k) r[idx[k]] = 0.5 * (i + j) + 1;
      i = j + 1;
    }
    return r;
  };
  const auto ra = ranks(a), rb = ranks(b);
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / ra.size();
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / rb.size();
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  return saa > 0 && sbb > 0 ? sab / std::sqrt(saa * sbb) : 0.0;
}

ExperimentConfig GapCampaign(const std::vector<int>& sizes, double eta,
                             int trials, std::int64_t max_iters) {
  ExperimentConfig c;
  c.game.kind = GameKind::kRandomBilinear;
  c.game.n = c.game.m = sizes.front();
  if (sizes.size() > 1) c.n_list = sizes;
  c.eta = eta;
  c.trials = trials;
  c.base_seed = 7;
  c.max_iters = max_iters;
  c.tol = 1e-5;
  c.stop_metric = StopMetric::kGap;
  c.metrics = {false, false, true};
  c.record_stride = 1000;
  c.out_dir = "unused";
  ValidateExperimentConfig(c);
  return c;
}

// 3. Iterations to a small gap grow with the game size.
Outcome SizeSweepTrend() {
  const std::vector<int> sizes = {5, 10, 20, 50};
  const CampaignResult r =
      RunExperiment(GapCampaign(sizes, 1.0, 10, 200000), {0, false});
  std::vector<double> xs, means;
  std::ostringstream detail;
  for (const AggregateRow& row : r.aggregates) {
    xs.push_back(row.n);
    means.push_back(row.mean_iters);
    detail << "n=" << row.n << " mean " << Fmt("%.1f", row.mean_iters)
           << " (conv " << Fmt("%.2f", row.converged_fraction) << "); ";
  }
  const double rho = Spearman(xs, means);
  detail << "spearman " << Fmt("%.3f", rho);
  return {rho >= 0.8, detail.str()};
}

// 4. At eta = 10 OMWU still converges while projected OGDA does not.
Outcome LargeStepComparison() {
  ExperimentConfig c = GapCampaign({20}, 10.0, 5, 50000);
  c.method_list = {Method::kOmwu, Method::kOgda};
  const CampaignResult r = RunExperiment(c, {0, false});
  int omwu_ok = 0, ogda_diverged = 0;
  double omwu_worst = 0.0, ogda_min = INFINITY;
  for (const RunRecord& run : r.runs) {
    const double gap = run.final_stop_value.value_or(INFINITY);
    if (run.method == Method::kOmwu) {
      omwu_ok += run.converged();
      omwu_worst = std::max(omwu_worst, gap);
    } else {
      ogda_diverged += gap > 0.1;
      ogda_min = std::min(ogda_min, gap);
    }
  }
  return {omwu_ok == 5 && ogda_diverged >= 4,
          Fmt("OMWU converged %.0f/5 (worst final gap %.3g); OGDA final gap > "
              "0.1 in %.0f/5 (smallest %.3g)",
              omwu_ok, omwu_worst, ogda_diverged, ogda_min)};
}

// 5. Analytic lifted-map Jacobian against central differences.
Outcome JacobianCorrectness() {
  Rng rng(2024);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + t % 4, m = 2 + (t / 4) % 4;
    const Matrix a = RandomGaussianMatrix(n, m, 100 + t);
    const GamePtr g = t % 2 ? MakeBilinear(a)
                            : MakeRegularizedBilinear(a, rng.Uniform());
    const Vector x = testing::InteriorPoint(rng, n);
    const Vector y = testing::InteriorPoint(rng, m);
    const Vector z = testing::InteriorPoint(rng, n);
    const Vector w = testing::InteriorPoint(rng, m);
    const double eta = rng.Uniform();
    const Matrix j = JacobianGeneral(*g, x, y, z, w, eta);
    Vector s(2 * (n + m));
    s << x, y, z, w;
    const double h = 1e-6;
    for (int c = 0; c < s.size(); ++c) {
      Vector p = s, q = s;
      p[c] += h;
      q[c] -= h;
      auto eval = [&](const Vector& v) {
        const LiftedPoint l =
            LiftedMap(*g, v.segment(0, n), v.segment(n, m),
                      v.segment(n + m, n), v.segment(2 * n + m, m), eta);
        Vector out(s.size());
        out << l.x, l.y, l.z, l.w;
        return out;
      };
      const Vector fd = (eval(p) - eval(q)) / (2 * h);
      worst = std::max(worst, (fd - j.col(c)).cwiseAbs().maxCoeff());
    }
  }
  return {worst <= 1e-6, Fmt("max abs deviation %.3g", worst)};
}

// Strict test games: interior planted equilibria, some extended by a
// strictly dominated row and column so both supports are partial.
struct StrictGame {
  GamePtr game;
  SimplexPoint x;
  SimplexPoint y;
};

std::vector<StrictGame> StrictTestGames(int count) {
  std::vector<StrictGame> out;
  for (int t = 0; t < count; ++t) {
    const int n = 2 + t % 3, m = 2 + (t / 3) % 3;
    const double alpha = 0.05 * (t % 4);
    const auto p = testing::MakePlantedGame(n, m, alpha, 4000 + t);
    if (t % 4 != 3) {
      out.push_back({p.game, p.x, p.y});
      continue;
    }
    Matrix a = Matrix::Zero(n + 1, m + 1);
    a.topLeftCorner(n, m) = p.payoff;
    a.block(n, 0, 1, m) = p.payoff.row(0).array() + 1.0;
    a.block(0, m, n, 1) = p.payoff.col(0).array() - 1.0;
    a(n, m) = 0.0;
    Vector x = Vector::Zero(n + 1), y = Vector::Zero(m + 1);
    x.head(n) = p.x.probs();
    y.head(m) = p.y.probs();
    out.push_back({MakeRegularizedBilinear(a, alpha), SimplexPoint(x),
                   SimplexPoint(y)});
  }
  return out;
}

// 6. Eigenvalues of J_new against those of J_small through
// lambda (lambda - 1) / (2 lambda - 1) = eps, and off-support formulas.
Outcome SpectrumReduction() {
  double literal = 0.0, corrected = 0.0, off = 0.0;
  int partial = 0;
  for (const StrictGame& sg : StrictTestGames(20)) {
    const SpectralReport r = AnalyzeStability(*sg.game, sg.x, sg.y, 0.05);
    if (r.kkt.verdict != KktVerdict::kPassStrict) {
      return {false, "test game is not strict"};
    }
    literal = std::max(literal, r.literal_relation_residual);
    corrected = std::max(corrected, r.map_residual);
    partial += !r.off_support_eigs.empty();
    for (const OffSupportEigenvalue& e : r.off_support_eigs) {
      off = std::max(off, DistanceToList(Cx(e.value, 0.0), r.eig_full));
    }
  }
  return {literal <= 1e-6 && off <= 1e-8,
          Fmt("relation residual %.3g (tol 1e-6); off-support mismatch %.3g "
              "over %.0f partial-support games; with eps/2 in place of eps the "
              "residual is %.3g",
              literal, off, partial, corrected)};
}

// 7. Nonzero eigenvalues of J_small have non-positive real part; Ky Fan.
Outcome RealPartNonPositive() {
  double worst = -INFINITY;
  for (int t = 0; t < 50; ++t) {
    const auto p = testing::MakePlantedGame(2 + t % 5, 2 + (t / 5) % 5,
                                            0.02 + 0.02 * (t % 10), 5000 + t);
    for (const Cx& e : Eig(BuildJSmall(*p.game, p.x, p.y, 0.01))) {
      if (std::abs(e) > kZeroEigenvalueTol) worst = std::max(worst, e.real());
    }
  }
  Rng rng(31);
  double ky_fan = -INFINITY;
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + t % 9;
    Matrix w(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) w(i, j) = rng.StandardNormal();
    }
    double max_re = -INFINITY;
    for (const Cx& e : Eig(w)) max_re = std::max(max_re, e.real());
    const Matrix sym = 0.5 * (w + w.transpose());
    const double top =
        Eigen::SelfAdjointEigenSolver<Matrix>(sym).eigenvalues().maxCoeff();
    ky_fan = std::max(ky_fan, max_re - top);
  }
  return {worst <= 1e-9 && ky_fan <= 1e-9,
          Fmt("max Re %.3g; max(Re eig(W) - top eig(sym W)) %.3g", worst,
              ky_fan)};
}

// 8. Small-eps regime of the eigenvalue map and contraction verdicts.
Outcome ContractionRegime() {
  double grid_max = 0.0;
  for (int a = 1; a <= 100; ++a) {
    for (int b = -100; b <= 100; ++b) {
      const auto [l1, l2] = EigenvalueMap(Cx(-0.001 * a, 0.001 * b));
      grid_max = std::max({grid_max, std::abs(l1), std::abs(l2)});
    }
  }
  Matrix dominated(3, 2);
  dominated << 1, -1, -1, 1, 2, 2;
  const SimplexPoint u2 = SimplexPoint::Uniform(2);
  const SpectralReport mp =
      AnalyzeStability(*MakeBilinear(MatchingPennies()), u2, u2, 0.05);
  const SpectralReport dm = AnalyzeStability(
      *MakeBilinear(dominated), SimplexPoint({0.5, 0.5, 0.0}), u2, 0.05);
  const auto [big1, big2] = EigenvalueMap(Cx(-10.0, 0.0));
  const double big = std::max(std::abs(big1), std::abs(big2));
  const bool contract = mp.verdict == StabilityVerdict::kContraction &&
                        dm.verdict == StabilityVerdict::kContraction &&
                        mp.spectral_radius < 1 - 1e-9 &&
                        dm.spectral_radius < 1 - 1e-9;
  return {grid_max < 1.0 && contract && big > 1.0,
          Fmt("grid max |lambda| %.6f; radius MP %.6f, dominated-row %.6f; "
              "eps=-10 max |lambda| %.3f",
              grid_max, mp.spectral_radius, dm.spectral_radius, big)};
}

// 9. The quadratic game's equilibrium is degenerate.
Outcome DegeneracySurfacing() {
  const auto g = MakeQuadraticExample();
  const SimplexPoint e({0.0, 1.0});
  const KktReport k = CheckKkt(*g, e, e);
  const SpectralReport r = AnalyzeStability(*g, e, e, 0.1);
  bool unit = false;
  for (const auto& v : r.off_support_eigs) {
    unit = unit || std::abs(v.value - 1.0) <= 1e-12;
  }
  return {k.verdict == KktVerdict::kPassDegenerate && unit &&
              r.degenerate_equilibrium,
          "kkt " + ToString(k.verdict) + ", off-support unit eigenvalue " +
              (unit ? "present" : "absent") + ", degenerate_equilibrium " +
              (r.degenerate_equilibrium ? "true" : "false")};
}

// 10. MWU cycles on matching pennies.
Outcome MwuBaseline() {
  const auto g = MakeBilinear(MatchingPennies());
  const StrategyPair u{SimplexPoint::Uniform(2), SimplexPoint::Uniform(2)};
  DynamicsState s = DynamicsState::FromPair(SimplexPoint({0.6, 0.4}),
                                            SimplexPoint({0.5, 0.5}));
  double best = L1Error(s, u);
  for (int t = 0; t < 10000; ++t) {
    s = MwuStep(s, *g, 0.5);
    best = std::min(best, L1Error(s, u));
  }
  return {best >= 0.1, Fmt("min l1 to uniform %.4f", best)};
}

std::string RawWithoutWallTime(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) out << line.substr(0, line.rfind(',')) << '\n';
  return out.str();
}

// 11. Byte-identical raw CSVs across reruns and worker counts.
Outcome Reproducibility() {
  const fs::path root = fs::temp_directory_path() / "mmx_acceptance_repro";
  fs::remove_all(root);
  std::vector<ExperimentConfig> configs;
  {
    ExperimentConfig c = GapCampaign({3, 5}, 0.5, 3, 2000);
    c.method_list = {Method::kOmwu, Method::kOgda};
    c.metrics = {true, true, true};
    c.stop_metric.reset();
    configs.push_back(c);
  }
  {
    ExperimentConfig c;
    c.game.kind = GameKind::kQuadratic;
    c.eta_list = {0.1, 1.0};
    c.trials = 3;
    c.max_iters = 3000;
    c.metrics = {true, true, true};
    c.record_stride = 7;
    configs.push_back(c);
  }
  int files = 0, mismatches = 0;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    std::vector<CampaignResult> results;
    for (int jobs : {1, 1, 4}) {
      ExperimentConfig c = configs[i];
      c.out_dir = (root / ("c" + std::to_string(i) + "_" +
                           std::to_string(results.size())))
                      .string();
      results.push_back(RunExperiment(c, {jobs, true}));
    }
    for (const RunRecord& run : results[0].runs) {
      const std::string ref = RawWithoutWallTime(results[0].RawCsvPath(run));
      for (std::size_t k = 1; k < results.size(); ++k) {
        ++files;
        mismatches += RawWithoutWallTime(results[k].RawCsvPath(run)) != ref;
      }
    }
  }
  fs::remove_all(root);
  return {files > 0 && mismatches == 0,
          Fmt("%.0f raw CSV comparisons, %.0f mismatches", files, mismatches)};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> check;
};

}  // namespace
}  // namespace mmx

int main(int argc, char** argv) {
  using namespace mmx;
  const std::vector<Criterion> all = {
      {1, "fixed-point invariance", 1, FixedPointInvariance},
      {2, "quadratic-game convergence", 60, QuadraticConvergence},
      {3, "size-sweep trend", 300, SizeSweepTrend},
      {4, "OMWU vs projected OGDA at eta=10", 120, LargeStepComparison},
      {5, "Jacobian correctness", 30, JacobianCorrectness},
      {6, "spectrum-reduction identity", 60, SpectrumReduction},
      {7, "non-positive real parts", 60, RealPartNonPositive},
      {8, "contraction regime", 60, ContractionRegime},
      {9, "degeneracy surfacing", 10, DegeneracySurfacing},
      {10, "MWU non-convergence", 10, MwuBaseline},
      {11, "reproducibility", 120, Reproducibility},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failures = 0;
  for (const Criterion& c : all) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    const bool in_budget = secs < c.budget_s;
    const bool pass = o.pass && in_budget;
    failures += !pass;
    std::printf("%s criterion %d (%s): %s [%.2f s%s]\n",
                pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                in_budget ? "" : ", over budget");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
