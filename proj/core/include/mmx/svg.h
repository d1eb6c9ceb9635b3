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

#ifndef MMX_SVG_H_
#define MMX_SVG_H_

#include <string>
#include <vector>

namespace mmx {

struct PlotSeries {
  std::string label;
  std::vector<double> xs;
  std::vector<double> ys;
};

struct PlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  // Draw an arrowhead at the end of every segment (phase-plane plots).
  bool arrows = false;
  int width = 640;
  int height = 420;
};

// Self-contained SVG with axes, one polyline per series and a legend.
// With log_y, non-positive and non-finite points are dropped.
std::string RenderLinePlotSvg(const std::vector<PlotSeries>& series,
                              const PlotOptions& options);
void WriteLinePlotSvg(const std::string& path,
                      const std::vector<PlotSeries>& series,
                      const PlotOptions& options);

}  // namespace mmx

#endif  // MMX_SVG_H_
