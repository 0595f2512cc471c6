// Copyright 2026 The sqhex Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Minimal standalone SVG 1.1 writers for tilings, curves and heat maps.

#ifndef SQHEX_TOOLS_SVG_H_
#define SQHEX_TOOLS_SVG_H_

#include <string>
#include <utility>
#include <vector>

#include "sqhex/lattice.h"
#include "sqhex/signatures.h"

namespace sqhex::cli {

// Lattice edges in grey, dimers bold and coloured by direction class.
std::string tiling_svg(const Graph& g, const Matching& m);

struct Series {
  std::vector<std::pair<double, double>> points;
  std::string color = "black";
  bool dots = false;  // markers instead of a polyline
};

struct Plot {
  double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
  std::string x_label, y_label, title;
  std::vector<Series> series;
};

// Polylines break where consecutive points leave the plot window.
std::string plot_svg(const Plot& plot);

// values[row][col] in [lo, hi], row 0 at the bottom.
std::string heatmap_svg(const std::vector<std::vector<double>>& values, double lo,
                        double hi, const std::string& title);

}  // namespace sqhex::cli

#endif  // SQHEX_TOOLS_SVG_H_
