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

#include "mmx/spectral.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mmx/errors.h"

namespace mmx {
namespace {

using Complex = std::complex<double>;

void CheckDims(const GameOracle& game, const Vector& x, const Vector& y,
               const Vector& z, const Vector& w) {
  if (x.size() != game.dim_x() || z.size() != game.dim_x() ||
      y.size() != game.dim_y() || w.size() != game.dim_y()) {
    throw InvalidInputError("lifted point dimensions do not match game");
  }
}

// Softmax-style pieces of one multiplicative update p = v * exp(u) / S:
// returns p and q = exp(u) / S, both shifted by max(u) for stability.
std::pair<Vector, Vector> UpdateParts(const Vector& v, const Vector& u) {
  const Vector e = (u.array() - u.maxCoeff()).exp().matrix();
  const double s = v.dot(e);
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw NumericalFailure("multiplicative update normalizer is not positive");
  }
  return {v.cwiseProduct(e) / s, e / s};
}

Matrix Centered(const Vector& p) {
  Matrix c = -p * p.transpose();
  c.diagonal() += p;
  return c;
}

// Jacobian of (g1, g2, x, y) with no positivity requirement on x, y.
Matrix AssembleJacobian(const GameOracle& game, const Vector& x,
                        const Vector& y, const Vector& z, const Vector& w,
                        double eta) {
  const int n = game.dim_x();
  const int m = game.dim_y();
  const Vector u = -2.0 * eta * game.GradX(x, y) + eta * game.GradX(z, w);
  const Vector v = 2.0 * eta * game.GradY(x, y) - eta * game.GradY(z, w);
  if (!u.allFinite() || !v.allFinite()) {
    throw NumericalFailure("non-finite gradient in Jacobian assembly");
  }
  const auto [p, q] = UpdateParts(x, u);
  const auto [r, s] = UpdateParts(y, v);
  const HessianBlocks cur = game.Hessian(x, y);
  const HessianBlocks prev = game.Hessian(z, w);
  const Matrix cp = Centered(p);
  const Matrix cr = Centered(r);

  const int d = 2 * (n + m);
  Matrix j = Matrix::Zero(d, d);
  // g1 rows.
  Matrix gxx = -p * q.transpose();
  gxx.diagonal() += q;
  j.block(0, 0, n, n) = gxx + cp * (-2.0 * eta * cur.xx);
  j.block(0, n, n, m) = cp * (-2.0 * eta * cur.xy);
  j.block(0, n + m, n, n) = cp * (eta * prev.xx);
  j.block(0, 2 * n + m, n, m) = cp * (eta * prev.xy);
  // g2 rows.
  Matrix gyy = -r * s.transpose();
  gyy.diagonal() += s;
  j.block(n, 0, m, n) = cr * (2.0 * eta * cur.yx);
  j.block(n, n, m, m) = gyy + cr * (2.0 * eta * cur.yy);
  j.block(n, n + m, m, n) = cr * (-eta * prev.yx);
  j.block(n, 2 * n + m, m, m) = cr * (-eta * prev.yy);
  // g3 = x, g4 = y.
  j.block(n + m, 0, n + m, n + m).setIdentity();
  return j;
}

Supports ResolveSupports(const SimplexPoint& x, const SimplexPoint& y,
                         const std::optional<Supports>& supports) {
  Supports s = supports ? *supports : DetectSupports(x, y);
  auto validate = [](std::vector<int>& idx, int dim, const char* who) {
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    if (idx.empty()) {
      throw Error(std::string("empty support for player ") + who);
    }
    if (idx.front() < 0 || idx.back() >= dim) {
      throw InvalidInputError(std::string("support index out of range for ") +
                              who);
    }
  };
  validate(s.x, x.size(), "x");
  validate(s.y, y.size(), "y");
  return s;
}

Vector Restrict(const Vector& v, const std::vector<int>& idx) {
  Vector out(static_cast<int>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) out[i] = v[idx[i]];
  return out;
}

Matrix Restrict(const Matrix& m, const std::vector<int>& rows,
                const std::vector<int>& cols) {
  Matrix out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      out(i, j) = m(rows[i], cols[j]);
    }
  }
  return out;
}

// Support-restricted ingredients shared by J_new and J_small.
struct Reduced {
  Matrix cx;  // D_x - x x^T
  Matrix cy;  // D_y - y y^T
  HessianBlocks h;
};

Reduced Reduce(const GameOracle& game, const SimplexPoint& x,
               const SimplexPoint& y, const Supports& s) {
  const HessianBlocks full = game.Hessian(x.probs(), y.probs());
  Reduced r;
  r.cx = Centered(Restrict(x.probs(), s.x));
  r.cy = Centered(Restrict(y.probs(), s.y));
  r.h.xx = Restrict(full.xx, s.x, s.x);
  r.h.xy = Restrict(full.xy, s.x, s.y);
  r.h.yx = Restrict(full.yx, s.y, s.x);
  r.h.yy = Restrict(full.yy, s.y, s.y);
  return r;
}

double MinDistance(Complex value, const ComplexList& set) {
  double best = std::numeric_limits<double>::infinity();
  for (const Complex& c : set) best = std::min(best, std::abs(value - c));
  return best;
}

nlohmann::json RealJson(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

Supports DetectSupports(const SimplexPoint& x, const SimplexPoint& y,
                        double threshold) {
  Supports s;
  for (int i = 0; i < x.size(); ++i) {
    if (x[i] > threshold) s.x.push_back(i);
  }
  for (int j = 0; j < y.size(); ++j) {
    if (y[j] > threshold) s.y.push_back(j);
  }
  return s;
}

LiftedPoint LiftedMap(const GameOracle& game, const Vector& x, const Vector& y,
                      const Vector& z, const Vector& w, double eta) {
  CheckDims(game, x, y, z, w);
  LiftedUpdate next = OmwuLiftedUpdate(game, x, y, z, w, eta);
  return {std::move(next.x_next), std::move(next.y_next), x, y};
}

Matrix JacobianGeneral(const GameOracle& game, const Vector& x,
                       const Vector& y, const Vector& z, const Vector& w,
                       double eta) {
  CheckDims(game, x, y, z, w);
  if ((x.array() <= 0.0).any() || (y.array() <= 0.0).any()) {
    throw InvalidStateError("Jacobian needs strictly positive x and y");
  }
  return AssembleJacobian(game, x, y, z, w, eta);
}

Matrix JacobianFixedPoint(const GameOracle& game, const SimplexPoint& x_star,
                          const SimplexPoint& y_star, double eta) {
  const KktReport kkt = CheckKkt(game, x_star, y_star, kDefaultKktTol);
  if (kkt.max_equality_residual > kDefaultKktTol) {
    std::ostringstream msg;
    msg << "not a fixed point: KKT equality residual "
        << kkt.max_equality_residual;
    throw InvalidEquilibriumError(msg.str());
  }
  const Vector& x = x_star.probs();
  const Vector& y = y_star.probs();
  return AssembleJacobian(game, x, y, x, y, eta);
}

std::vector<OffSupportEigenvalue> OffSupportEigenvalues(
    const GameOracle& game, const SimplexPoint& x_star,
    const SimplexPoint& y_star, double eta,
    const std::optional<Supports>& supports) {
  const Supports s = ResolveSupports(x_star, y_star, supports);
  const Vector& x = x_star.probs();
  const Vector& y = y_star.probs();
  const auto [px, qx] = UpdateParts(x, -eta * game.GradX(x, y));
  const auto [py, qy] = UpdateParts(y, eta * game.GradY(x, y));
  std::vector<OffSupportEigenvalue> out;
  for (int i = 0, k = 0; i < x.size(); ++i) {
    if (k < static_cast<int>(s.x.size()) && s.x[k] == i) {
      ++k;
      continue;
    }
    out.push_back({'x', i, qx[i]});
  }
  for (int j = 0, k = 0; j < y.size(); ++j) {
    if (k < static_cast<int>(s.y.size()) && s.y[k] == j) {
      ++k;
      continue;
    }
    out.push_back({'y', j, qy[j]});
  }
  return out;
}

Matrix BuildJNew(const GameOracle& game, const SimplexPoint& x_star,
                 const SimplexPoint& y_star, double eta,
                 const std::optional<Supports>& supports) {
  const Supports s = ResolveSupports(x_star, y_star, supports);
  const Reduced r = Reduce(game, x_star, y_star, s);
  const int kx = static_cast<int>(s.x.size());
  const int ky = static_cast<int>(s.y.size());
  const int k = kx + ky;
  Matrix j = Matrix::Zero(2 * k, 2 * k);
  j.block(0, 0, kx, kx) =
      Matrix::Identity(kx, kx) - 2.0 * eta * r.cx * r.h.xx;
  j.block(0, kx, kx, ky) = -2.0 * eta * r.cx * r.h.xy;
  j.block(0, k, kx, kx) = eta * r.cx * r.h.xx;
  j.block(0, k + kx, kx, ky) = eta * r.cx * r.h.xy;
  j.block(kx, 0, ky, kx) = 2.0 * eta * r.cy * r.h.yx;
  j.block(kx, kx, ky, ky) =
      Matrix::Identity(ky, ky) + 2.0 * eta * r.cy * r.h.yy;
  j.block(kx, k, ky, kx) = -eta * r.cy * r.h.yx;
  j.block(kx, k + kx, ky, ky) = -eta * r.cy * r.h.yy;
  j.block(k, 0, k, k).setIdentity();
  return j;
}

Matrix BuildJSmall(const GameOracle& game, const SimplexPoint& x_star,
                   const SimplexPoint& y_star, double eta,
                   const std::optional<Supports>& supports) {
  const Supports s = ResolveSupports(x_star, y_star, supports);
  const Reduced r = Reduce(game, x_star, y_star, s);
  const int kx = static_cast<int>(s.x.size());
  const int ky = static_cast<int>(s.y.size());
  Matrix h_minus(kx + ky, kx + ky);
  h_minus << -r.h.xx, -r.h.xy, r.h.yx, r.h.yy;
  Matrix c = Matrix::Zero(kx + ky, kx + ky);
  c.topLeftCorner(kx, kx) = r.cx;
  c.bottomRightCorner(ky, ky) = r.cy;
  return 2.0 * eta * c * h_minus;
}

std::pair<Complex, Complex> EigenvalueMap(Complex epsilon) {
  const Complex b = 1.0 + 2.0 * epsilon;
  const Complex disc = std::sqrt(b * b - 4.0 * epsilon);
  // Pick the sign that avoids cancellation in b +- disc.
  const Complex big =
      (std::real(std::conj(b) * disc) >= 0.0) ? b + disc : b - disc;
  const Complex lambda1 = 0.5 * big;
  // lambda1 = 0 would need b = disc = 0, which forces eps = 0 and b = 1.
  const Complex lambda2 = epsilon / lambda1;
  return {lambda1, lambda2};
}

Complex InverseEigenvalueMap(Complex lambda) {
  return lambda * (lambda - 1.0) / (2.0 * lambda - 1.0);
}

std::string ToString(StabilityVerdict verdict) {
  return verdict == StabilityVerdict::kContraction ? "contraction"
                                                   : "not_contraction";
}

SpectralReport AnalyzeStability(const GameOracle& game,
                                const SimplexPoint& x_star,
                                const SimplexPoint& y_star, double eta,
                                double margin,
                                const std::optional<Supports>& supports) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw InvalidParameterError("eta must be positive and finite");
  }
  if (!(margin >= 0.0)) {
    throw InvalidParameterError("margin must be nonnegative");
  }
  SpectralReport report;
  report.eta = eta;
  report.margin = margin;
  report.supports = ResolveSupports(x_star, y_star, supports);
  report.kkt = CheckKkt(game, x_star, y_star, kDefaultKktTol);
  if (report.kkt.verdict == KktVerdict::kFail) {
    std::ostringstream msg;
    msg << "KKT check failed (equality residual "
        << report.kkt.max_equality_residual << ", min slack "
        << report.kkt.min_slack << ")";
    throw InvalidEquilibriumError(msg.str());
  }
  if (report.kkt.verdict == KktVerdict::kPassDegenerate) {
    report.degenerate_equilibrium = true;
    report.warnings.push_back(
        "degenerate equilibrium: an off-support coordinate has zero slack, "
        "so the strict-complementarity hypothesis of the convergence "
        "guarantee does not hold");
  }

  report.off_support_eigs =
      OffSupportEigenvalues(game, x_star, y_star, eta, report.supports);
  report.j_full = JacobianFixedPoint(game, x_star, y_star, eta);
  report.j_new = BuildJNew(game, x_star, y_star, eta, report.supports);
  report.j_small = BuildJSmall(game, x_star, y_star, eta, report.supports);
  report.eig_full = Eig(report.j_full);
  report.eig_new = Eig(report.j_new);
  report.eig_small = Eig(report.j_small);
  SortEigenvalues(report.eig_full);
  SortEigenvalues(report.eig_new);
  SortEigenvalues(report.eig_small);

  double off_max = 0.0;
  for (const auto& e : report.off_support_eigs) {
    off_max = std::max(off_max, std::abs(e.value));
  }
  report.spectral_radius = std::max(off_max, MaxModulus(report.eig_full));
  report.spectral_radius_j_new = std::max(off_max, MaxModulus(report.eig_new));
  report.verdict = report.spectral_radius < 1.0 - margin
                       ? StabilityVerdict::kContraction
                       : StabilityVerdict::kNotContraction;

  report.max_real_nonzero_small = -std::numeric_limits<double>::infinity();
  for (const Complex& eps : report.eig_small) {
    if (std::abs(eps) <= kZeroEigenvalueTol) continue;
    report.max_real_nonzero_small = std::max(report.max_real_nonzero_small, eps.real());
    const auto [l1, l2] = EigenvalueMap(0.5 * eps);
    report.map_residual =
        std::max({report.map_residual, MinDistance(l1, report.eig_new),
                  MinDistance(l2, report.eig_new)});
  }
  for (const Complex& lambda : report.eig_new) {
    if (std::abs(2.0 * lambda - 1.0) <= kHalfExemptionTol) {
      ++report.half_count;
      continue;
    }
    report.literal_relation_residual =
        std::max(report.literal_relation_residual,
                 MinDistance(InverseEigenvalueMap(lambda), report.eig_small));
  }
  if (report.spectral_radius_j_new >= 1.0 - margin &&
      report.verdict == StabilityVerdict::kContraction) {
    report.warnings.push_back(
        "J_new has modulus-one eigenvalues from the simplex constraint "
        "directions; the radius is taken from the full Jacobian");
  }
  return report;
}

nlohmann::json ComplexListToJson(const ComplexList& values) {
  nlohmann::json out = nlohmann::json::array();
  for (const Complex& v : values) out.push_back({v.real(), v.imag()});
  return out;
}

nlohmann::json MatrixToJson(const Matrix& m) {
  nlohmann::json out = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

nlohmann::json ToJson(const SpectralReport& report, bool include_matrices) {
  nlohmann::json j;
  j["eta"] = report.eta;
  j["margin"] = report.margin;
  j["support_x"] = report.supports.x;
  j["support_y"] = report.supports.y;
  j["kkt"] = ToJson(report.kkt);
  nlohmann::json off = nlohmann::json::array();
  for (const auto& e : report.off_support_eigs) {
    off.push_back({{"player", std::string(1, e.player)},
                   {"index", e.index},
                   {"eigenvalue", e.value}});
  }
  j["off_support_eigs"] = std::move(off);
  j["eig_full"] = ComplexListToJson(report.eig_full);
  j["eig_new"] = ComplexListToJson(report.eig_new);
  j["eig_small"] = ComplexListToJson(report.eig_small);
  j["spectral_radius"] = report.spectral_radius;
  j["spectral_radius_j_new"] = report.spectral_radius_j_new;
  j["verdict"] = ToString(report.verdict);
  j["max_real_nonzero_small"] = RealJson(report.max_real_nonzero_small);
  j["map_residual"] = report.map_residual;
  j["literal_relation_residual"] = report.literal_relation_residual;
  j["half_count"] = report.half_count;
  j["degenerate_equilibrium"] = report.degenerate_equilibrium;
  j["warnings"] = report.warnings;
  if (include_matrices) {
    j["j_full"] = MatrixToJson(report.j_full);
    j["j_new"] = MatrixToJson(report.j_new);
    j["j_small"] = MatrixToJson(report.j_small);
  }
  return j;
}

}  // namespace mmx
