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

#include "mmx/svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "mmx/errors.h"

namespace mmx {
namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#ff7f0e", "#9467bd", "#8c564b",
                                    "#e377c2", "#7f7f7f"};
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 36;
constexpr int kMarginBottom = 50;
constexpr std::size_t kMaxArrows = 400;

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string Tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

std::string Escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

std::string RenderLinePlotSvg(const std::vector<PlotSeries>& series,
                              const PlotOptions& options) {
  // Transformed copies with unusable points removed.
  std::vector<std::vector<std::pair<double, double>>> pts(series.size());
  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = x_lo;
  double y_hi = -x_lo;
  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto& src = series[s];
    const std::size_t count = std::min(src.xs.size(), src.ys.size());
    for (std::size_t i = 0; i < count; ++i) {
      double x = src.xs[i];
      double y = src.ys[i];
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (options.log_y) {
        if (y <= 0.0) continue;
        y = std::log10(y);
      }
      pts[s].emplace_back(x, y);
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  if (!std::isfinite(x_lo)) {
    x_lo = 0.0;
    x_hi = 1.0;
    y_lo = 0.0;
    y_hi = 1.0;
  }
  if (x_hi - x_lo <= 0.0) {
    x_lo -= 0.5;
    x_hi += 0.5;
  }
  if (y_hi - y_lo <= 0.0) {
    y_lo -= 0.5;
    y_hi += 0.5;
  }

  const double plot_w = options.width - kMarginLeft - kMarginRight;
  const double plot_h = options.height - kMarginTop - kMarginBottom;
  auto px = [&](double x) {
    return kMarginLeft + (x - x_lo) / (x_hi - x_lo) * plot_w;
  };
  auto py = [&](double y) {
    return kMarginTop + (y_hi - y) / (y_hi - y_lo) * plot_h;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width
      << "\" height=\"" << options.height << "\" viewBox=\"0 0 "
      << options.width << " " << options.height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (options.arrows) {
    svg << "<defs>";
    for (std::size_t c = 0; c < std::size(kPalette); ++c) {
      svg << "<marker id=\"arrow" << c
          << "\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" "
             "markerWidth=\"5\" markerHeight=\"5\" orient=\"auto\">"
          << "<path d=\"M0,0 L10,5 L0,10 z\" fill=\"" << kPalette[c]
          << "\"/></marker>";
    }
    svg << "</defs>\n";
  }
  svg << "<text x=\"" << options.width / 2 << "\" y=\"20\" "
      << "text-anchor=\"middle\" font-size=\"14\">" << Escape(options.title)
      << "</text>\n";
  // Axes and ticks.
  const double x0 = kMarginLeft;
  const double y0 = kMarginTop + plot_h;
  svg << "<line x1=\"" << Num(x0) << "\" y1=\"" << Num(y0) << "\" x2=\""
      << Num(x0 + plot_w) << "\" y2=\"" << Num(y0)
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << Num(x0) << "\" y1=\"" << Num(kMarginTop)
      << "\" x2=\"" << Num(x0) << "\" y2=\"" << Num(y0)
      << "\" stroke=\"black\"/>\n";
  constexpr int kTicks = 5;
  for (int k = 0; k <= kTicks; ++k) {
    const double xv = x_lo + (x_hi - x_lo) * k / kTicks;
    const double yv = y_lo + (y_hi - y_lo) * k / kTicks;
    svg << "<text x=\"" << Num(px(xv)) << "\" y=\"" << Num(y0 + 16)
        << "\" text-anchor=\"middle\">" << Tick(xv) << "</text>\n";
    const std::string label =
        options.log_y ? "1e" + Tick(yv) : Tick(yv);
    svg << "<text x=\"" << Num(x0 - 6) << "\" y=\"" << Num(py(yv) + 4)
        << "\" text-anchor=\"end\">" << label << "</text>\n";
  }
  svg << "<text x=\"" << Num(x0 + plot_w / 2) << "\" y=\""
      << options.height - 12 << "\" text-anchor=\"middle\">"
      << Escape(options.x_label) << "</text>\n";
  svg << "<text x=\"16\" y=\"" << Num(kMarginTop + plot_h / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << Num(kMarginTop + plot_h / 2) << ")\">"
      << Escape(options.log_y ? options.y_label + " (log10)"
                              : options.y_label)
      << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const std::size_t color = s % std::size(kPalette);
    const auto& p = pts[s];
    if (options.arrows) {
      // Thin long series so the file stays small; keeps the last point.
      const std::size_t step = std::max<std::size_t>(1, p.size() / kMaxArrows);
      for (std::size_t i = step; i < p.size() + step; i += step) {
        const std::size_t a = i - step;
        const std::size_t b = std::min(i, p.size() - 1);
        if (a == b) break;
        svg << "<line x1=\"" << Num(px(p[a].first)) << "\" y1=\""
            << Num(py(p[a].second)) << "\" x2=\"" << Num(px(p[b].first))
            << "\" y2=\"" << Num(py(p[b].second)) << "\" stroke=\""
            << kPalette[color] << "\" stroke-width=\"1\" marker-end=\"url(#arrow"
            << color << ")\"/>\n";
      }
    } else if (!p.empty()) {
      svg << "<polyline fill=\"none\" stroke=\"" << kPalette[color]
          << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : p) svg << Num(px(x)) << "," << Num(py(y)) << " ";
      svg << "\"/>\n";
    }
    const double ly = kMarginTop + 14 + 16 * static_cast<double>(s);
    svg << "<line x1=\"" << Num(x0 + plot_w - 120) << "\" y1=\"" << Num(ly - 4)
        << "\" x2=\"" << Num(x0 + plot_w - 100) << "\" y2=\"" << Num(ly - 4)
        << "\" stroke=\"" << kPalette[color] << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << Num(x0 + plot_w - 95) << "\" y=\"" << Num(ly)
        << "\">" << Escape(series[s].label) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void WriteLinePlotSvg(const std::string& path,
                      const std::vector<PlotSeries>& series,
                      const PlotOptions& options) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << RenderLinePlotSvg(series, options);
}

}  // namespace mmx
