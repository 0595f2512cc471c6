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

#include "sqhex/lattice.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "sqhex/errors.h"

namespace sqhex {

namespace {

int wrap(int level, int period) { return (level - 1) % period; }

}  // namespace

bool LatticeSpec::is_hexagon(int level) const {
  return pattern[wrap(level, period())] == 1;
}

double LatticeSpec::upper_weight(int level) const {
  return weights.ne_upper[wrap(level, period())];
}

double LatticeSpec::lower_weight(int level) const {
  const int key = wrap(level, period()) + 1;
  auto it = weights.ne_lower.find(key);
  if (it == weights.ne_lower.end()) {
    throw ValidationError("no lower NE-SW weight for level " +
                          std::to_string(level));
  }
  return it->second;
}

void LatticeSpec::validate() const {
  if (levels < 1) throw ValidationError("number of levels must be positive");
  if (static_cast<int>(boundary.size()) != levels) {
    throw ValidationError("boundary must list exactly one position per level");
  }
  if (boundary[0] != 1) throw ValidationError("boundary must start at 1");
  for (size_t k = 1; k < boundary.size(); ++k) {
    if (boundary[k] <= boundary[k - 1]) {
      throw ValidationError("boundary positions must be strictly increasing");
    }
  }
  if (pattern.empty()) throw ValidationError("empty level pattern");
  for (int a : pattern) {
    if (a != 0 && a != 1) throw ValidationError("level pattern must be 0/1");
  }
  if (static_cast<int>(weights.ne_upper.size()) != period()) {
    throw ValidationError("need one upper weight per period position");
  }
  for (double w : weights.ne_upper) {
    if (!(w > 0) || !std::isfinite(w)) {
      throw ValidationError("weights must be positive and finite");
    }
  }
  for (int j = 1; j <= period(); ++j) {
    const bool square = pattern[j - 1] == 0;
    auto it = weights.ne_lower.find(j);
    if (square && it == weights.ne_lower.end()) {
      throw ValidationError("square level " + std::to_string(j) +
                            " needs a lower weight");
    }
    if (!square && it != weights.ne_lower.end()) {
      throw ValidationError("hexagon level " + std::to_string(j) +
                            " cannot carry a lower weight");
    }
    if (square && (!(it->second > 0) || !std::isfinite(it->second))) {
      throw ValidationError("weights must be positive and finite");
    }
  }
  for (const auto& [key, w] : weights.ne_lower) {
    if (key < 1 || key > period()) {
      throw ValidationError("lower weight key outside the period");
    }
    (void)w;
  }
}

LatticeSpec make_unit_spec(const std::vector<int>& boundary,
                           const std::vector<int>& pattern) {
  LatticeSpec spec;
  spec.levels = static_cast<int>(boundary.size());
  spec.boundary = boundary;
  spec.pattern = pattern;
  spec.weights.ne_upper.assign(pattern.size(), 1.0);
  for (size_t j = 0; j < pattern.size(); ++j) {
    if (pattern[j] == 0) spec.weights.ne_lower[static_cast<int>(j) + 1] = 1.0;
  }
  return spec;
}

std::pair<std::set<int>, std::set<int>> classify_levels(
    const LatticeSpec& spec) {
  std::set<int> hexagon, square;
  for (int i = 1; i <= spec.levels; ++i) {
    (spec.is_hexagon(i) ? hexagon : square).insert(i);
  }
  return {hexagon, square};
}

std::vector<int> Graph::real_vertices(Color color) const {
  std::vector<int> out;
  for (const Vertex& v : vertices) {
    if (v.color == color && !v.is_virtual) out.push_back(v.id);
  }
  return out;
}

int Graph::edge_between(int u, int v) const {
  for (int e : incident[u]) {
    const Edge& edge = edges[e];
    if (edge.white == v || edge.black == v) return e;
  }
  return -1;
}

namespace {

// Traces the faces of the straight-line embedding and keeps the bounded ones.
void trace_faces(Graph& g) {
  const int nv = static_cast<int>(g.vertices.size());
  // Neighbours sorted counterclockwise by angle.
  std::vector<std::vector<int>> around(nv);
  for (int v = 0; v < nv; ++v) {
    std::vector<std::pair<double, int>> order;
    for (int e : g.incident[v]) {
      const Edge& edge = g.edges[e];
      const int w = edge.white == v ? edge.black : edge.white;
      const double dx = g.vertices[w].x2 - g.vertices[v].x2;
      const double dy = g.vertices[w].row - g.vertices[v].row;
      order.emplace_back(std::atan2(dy, dx), e);
    }
    std::sort(order.begin(), order.end());
    for (auto& [angle, e] : order) around[v].push_back(e);
  }
  const int ne = static_cast<int>(g.edges.size());
  // Dart 2e goes white->black, 2e+1 black->white.
  std::vector<char> used(2 * ne, 0);
  auto head = [&](int dart) {
    const Edge& e = g.edges[dart / 2];
    return dart % 2 == 0 ? e.black : e.white;
  };
  auto tail = [&](int dart) {
    const Edge& e = g.edges[dart / 2];
    return dart % 2 == 0 ? e.white : e.black;
  };
  for (int start = 0; start < 2 * ne; ++start) {
    if (used[start]) continue;
    Face face;
    double area2 = 0;
    int dart = start;
    while (!used[dart]) {
      used[dart] = 1;
      const int u = tail(dart), v = head(dart);
      face.vertices.push_back(u);
      face.edges.push_back(dart / 2);
      area2 += static_cast<double>(g.vertices[u].x2) * g.vertices[v].row -
               static_cast<double>(g.vertices[v].x2) * g.vertices[u].row;
      // At v, step clockwise from the edge we arrived by.
      const auto& ring = around[v];
      const int pos = static_cast<int>(
          std::find(ring.begin(), ring.end(), dart / 2) - ring.begin());
      const int next_edge =
          ring[(pos + static_cast<int>(ring.size()) - 1) % ring.size()];
      dart = 2 * next_edge + (g.edges[next_edge].white == v ? 0 : 1);
    }
    if (area2 > 0) g.faces.push_back(std::move(face));
  }
}

}  // namespace

std::vector<int> boundary_from_segments(
    int levels, const std::vector<std::pair<double, double>>& segments) {
  if (levels < 1) throw ValidationError("levels must be positive");
  if (segments.empty()) throw ValidationError("at least one segment required");
  double total = 0;
  for (const auto& [a, b] : segments) {
    if (!(b > a)) throw ValidationError("segments need a < b");
    total += b - a;
  }
  // Largest-remainder rounding of the run lengths.
  const int s = static_cast<int>(segments.size());
  std::vector<int> len(s);
  std::vector<std::pair<double, int>> rest;
  int used = 0;
  for (int i = 0; i < s; ++i) {
    const double exact = (segments[i].second - segments[i].first) / total * levels;
    len[i] = static_cast<int>(std::floor(exact));
    used += len[i];
    rest.push_back({exact - len[i], i});
  }
  std::sort(rest.begin(), rest.end(), std::greater<>());
  for (int k = 0; used < levels; ++k, ++used) ++len[rest[k % s].second];
  std::vector<int> out;
  int next_free = 1;
  for (int i = 0; i < s; ++i) {
    const int start = std::max(
        next_free, static_cast<int>(std::lround(segments[i].first * levels)) + 1);
    for (int k = 0; k < len[i]; ++k) out.push_back(start + k);
    next_free = start + len[i] + (i + 1 < s ? 1 : 0);
  }
  if (out.front() != 1) {
    throw ValidationError("the first segment must start at 0");
  }
  return out;
}

std::vector<int> boundary_staircase(int levels, int step) {
  if (levels < 1 || step < 1) throw ValidationError("levels and step must be positive");
  std::vector<int> out(levels);
  for (int k = 0; k < levels; ++k) out[k] = 1 + step * k;
  return out;
}

std::vector<int> row_widths(const LatticeSpec& spec) {
  std::vector<int> width(2 * spec.levels + 1, 0);
  width[0] = spec.boundary.back();
  for (int s = 1; s <= spec.levels; ++s) {
    width[2 * s - 1] = width[2 * s - 2] + (spec.is_hexagon(s) ? 0 : 1);
    width[2 * s] = width[2 * s - 1] - 1;
  }
  return width;
}

Graph build_lattice(const LatticeSpec& spec) {
  spec.validate();
  Graph g;
  g.levels = spec.levels;
  const int nrows = 2 * spec.levels + 1;
  g.rows.resize(nrows);

  auto add_vertex = [&](int row, int col, bool is_virtual) {
    Vertex v;
    v.id = static_cast<int>(g.vertices.size());
    v.row = row;
    v.col = col;
    v.color = row % 2 == 1 ? Color::kWhite : Color::kBlack;
    v.x2 = row % 2 == 1 ? 2 * col + 1 : 2 * col;
    v.is_virtual = is_virtual;
    g.vertices.push_back(v);
    g.rows[row - 1].push_back(v.id);
  };

  std::vector<int> width = row_widths(spec);
  width.insert(width.begin(), 0);  // 1-based below
  {
    std::vector<char> present(width[1], 0);
    for (int p : spec.boundary) present[p - 1] = 1;
    for (int c = 0; c < width[1]; ++c) add_vertex(1, c, !present[c]);
  }
  for (int r = 2; r <= nrows; ++r) {
    for (int c = 0; c < width[r]; ++c) add_vertex(r, c, false);
  }
  g.incident.assign(g.vertices.size(), {});

  auto add_edge = [&](int white, int black, EdgeDir dir, double weight,
                      int lower_row) {
    Edge e;
    e.id = static_cast<int>(g.edges.size());
    e.white = white;
    e.black = black;
    e.dir = dir;
    e.weight = weight;
    e.lower_row = lower_row;
    g.edges.push_back(e);
    g.incident[white].push_back(e.id);
    g.incident[black].push_back(e.id);
  };

  // Edges by lower row, then lower vertex left to right, up-left first.
  for (int r = 1; r < nrows; ++r) {
    const int level = (r + 1) / 2;
    for (int c = 0; c < width[r]; ++c) {
      const Vertex& low = g.at(r, c);
      if (low.is_virtual) continue;
      if (r % 2 == 1) {
        // White to black, rows 2s-1 -> 2s.
        const bool hexagon = spec.is_hexagon(level);
        add_edge(low.id, g.rows[r][c], hexagon ? EdgeDir::kVertical
                                               : EdgeDir::kNwSe,
                 1.0, r);
        if (!hexagon) {
          add_edge(low.id, g.rows[r][c + 1], EdgeDir::kNeSw,
                   spec.lower_weight(level), r);
        }
      } else {
        // Black to white, rows 2s -> 2s+1.
        if (c - 1 >= 0) {
          add_edge(g.rows[r][c - 1], low.id, EdgeDir::kNwSe, 1.0, r);
        }
        if (c < width[r + 1]) {
          add_edge(g.rows[r][c], low.id, EdgeDir::kNeSw,
                   spec.upper_weight(level), r);
        }
      }
    }
  }
  trace_faces(g);
  for (const Face& f : g.faces) {
    if (f.vertices.size() != 4 && f.vertices.size() != 6) {
      throw NumericError("face of unexpected degree " +
                         std::to_string(f.vertices.size()));
    }
  }
  return g;
}

}  // namespace sqhex
