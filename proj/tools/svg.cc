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

#include "svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace sqhex::cli {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string header(double width, double height) {
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
    << num(width) << "\" height=\"" << num(height) << "\" viewBox=\"0 0 "
    << num(width) << " " << num(height) << "\">\n"
    << "<rect x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\"" << num(height)
    << "\" fill=\"white\"/>\n";
  return s.str();
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string tiling_svg(const Graph& g, const Matching& m) {
  int max_x = 1;
  for (const Vertex& v : g.vertices) max_x = std::max(max_x, v.x2);
  const double unit = std::clamp(800.0 / (max_x + 2), 2.0, 40.0);
  const double margin = unit;
  const double width = (max_x + 2) * unit / 2 + 2 * margin;
  const double height = (g.num_rows() + 1) * unit / 2 + 2 * margin;
  auto px = [&](const Vertex& v) { return margin + v.x2 * unit / 2; };
  auto py = [&](const Vertex& v) { return height - margin - v.row * unit / 2; };
  const std::set<int> dimers(m.begin(), m.end());
  std::ostringstream s;
  s << header(width, height);
  s << "<g stroke=\"#c8c8c8\" stroke-width=\"" << num(unit / 20) << "\">\n";
  for (const Edge& e : g.edges) {
    const Vertex& a = g.vertices[e.white];
    const Vertex& b = g.vertices[e.black];
    s << "<line x1=\"" << num(px(a)) << "\" y1=\"" << num(py(a)) << "\" x2=\""
      << num(px(b)) << "\" y2=\"" << num(py(b)) << "\"/>\n";
  }
  s << "</g>\n<g stroke-width=\"" << num(unit / 4) << "\" stroke-linecap=\"round\">\n";
  for (int id : dimers) {
    const Edge& e = g.edges[id];
    const char* color = e.dir == EdgeDir::kNeSw   ? "#d62728"
                        : e.dir == EdgeDir::kNwSe ? "#1f77b4"
                                                  : "#2ca02c";
    const Vertex& a = g.vertices[e.white];
    const Vertex& b = g.vertices[e.black];
    s << "<line x1=\"" << num(px(a)) << "\" y1=\"" << num(py(a)) << "\" x2=\""
      << num(px(b)) << "\" y2=\"" << num(py(b)) << "\" stroke=\"" << color << "\"/>\n";
  }
  s << "</g>\n</svg>\n";
  return s.str();
}

std::string plot_svg(const Plot& plot) {
  const double w = 640, h = 480, left = 60, right = 20, top = 40, bottom = 50;
  const double pw = w - left - right, ph = h - top - bottom;
  auto sx = [&](double x) { return left + (x - plot.x_lo) / (plot.x_hi - plot.x_lo) * pw; };
  auto sy = [&](double y) { return top + ph - (y - plot.y_lo) / (plot.y_hi - plot.y_lo) * ph; };
  auto inside = [&](double x, double y) {
    const double sx_ = (plot.x_hi - plot.x_lo) * 1e-6, sy_ = (plot.y_hi - plot.y_lo) * 1e-6;
    return std::isfinite(x) && std::isfinite(y) && x >= plot.x_lo - sx_ &&
           x <= plot.x_hi + sx_ && y >= plot.y_lo - sy_ && y <= plot.y_hi + sy_;
  };
  std::ostringstream s;
  s << header(w, h);
  s << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw)
    << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  s << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<text x=\"" << num(w / 2) << "\" y=\"24\" text-anchor=\"middle\">"
    << escape(plot.title) << "</text>\n";
  s << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(h - 12)
    << "\" text-anchor=\"middle\">" << escape(plot.x_label) << "</text>\n";
  s << "<text x=\"16\" y=\"" << num(top + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << num(top + ph / 2) << ")\">" << escape(plot.y_label) << "</text>\n";
  for (int k = 0; k <= 4; ++k) {
    const double x = plot.x_lo + (plot.x_hi - plot.x_lo) * k / 4;
    const double y = plot.y_lo + (plot.y_hi - plot.y_lo) * k / 4;
    s << "<text x=\"" << num(sx(x)) << "\" y=\"" << num(top + ph + 16)
      << "\" text-anchor=\"middle\">" << num(x) << "</text>\n";
    s << "<text x=\"" << num(left - 6) << "\" y=\"" << num(sy(y) + 4)
      << "\" text-anchor=\"end\">" << num(y) << "</text>\n";
  }
  s << "</g>\n";
  for (const Series& series : plot.series) {
    if (series.dots) {
      for (const auto& [x, y] : series.points) {
        if (!inside(x, y)) continue;
        s << "<circle cx=\"" << num(sx(x)) << "\" cy=\"" << num(sy(y))
          << "\" r=\"3\" fill=\"" << series.color << "\"/>\n";
      }
      continue;
    }
    std::vector<std::string> run;
    auto flush = [&]() {
      if (run.size() >= 2) {
        s << "<polyline fill=\"none\" stroke=\"" << series.color
          << "\" stroke-width=\"1.5\" points=\"";
        for (size_t k = 0; k < run.size(); ++k) s << (k ? " " : "") << run[k];
        s << "\"/>\n";
      }
      run.clear();
    };
    for (const auto& [x, y] : series.points) {
      if (!inside(x, y)) {
        flush();
        continue;
      }
      run.push_back(num(sx(x)) + "," + num(sy(y)));
    }
    flush();
  }
  s << "</svg>\n";
  return s.str();
}

std::string heatmap_svg(const std::vector<std::vector<double>>& values, double lo,
                        double hi, const std::string& title) {
  const int rows = static_cast<int>(values.size());
  const int cols = rows ? static_cast<int>(values.front().size()) : 0;
  const double cell = std::clamp(600.0 / std::max(1, std::max(rows, cols)), 1.0, 24.0);
  const double margin = 30;
  const double w = cols * cell + 2 * margin, h = rows * cell + 2 * margin;
  std::ostringstream s;
  s << header(w, h);
  s << "<text x=\"" << num(w / 2) << "\" y=\"20\" text-anchor=\"middle\" "
       "font-family=\"sans-serif\" font-size=\"12\">"
    << escape(title) << "</text>\n";
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const double v = values[r][c];
      double t = hi > lo ? (v - lo) / (hi - lo) : 0.5;
      t = std::isfinite(t) ? std::clamp(t, 0.0, 1.0) : 0.0;
      const int level = static_cast<int>(std::lround(255 * (1 - t)));
      s << "<rect x=\"" << num(margin + c * cell) << "\" y=\""
        << num(h - margin - (r + 1) * cell) << "\" width=\"" << num(cell)
        << "\" height=\"" << num(cell) << "\" fill=\"rgb(" << level << "," << level
        << ",255)\"/>\n";
    }
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace sqhex::cli
