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

// Contracting square-hexagon graphs.
//
// The graph has 2N+1 rows numbered from 1 at the bottom. Odd rows hold white
// vertices, even rows black ones. Level i (1..N) is the strip made of rows
// 2i-1, 2i and 2i+1. A level is either "square" (each white vertex of row
// 2i-1 has two neighbours in row 2i) or "hexagon" (one neighbour).
//
// Embedding: a vertex in row r sits at height r/2. Even rows start at
// abscissa 0, odd rows at 1/2, one unit apart. We store twice the abscissa.

#ifndef SQHEX_LATTICE_H_
#define SQHEX_LATTICE_H_

#include <map>
#include <set>
#include <utility>
#include <vector>

namespace sqhex {

// Weights repeating with period n along the levels.
struct PeriodicWeights {
  // ne_upper[j]: weight of NE-SW edges joining row 2i to row 2i+1 for every
  // level i with i = j+1 mod n.
  std::vector<double> ne_upper;
  // ne_lower[j]: weight of NE-SW edges joining row 2i-1 to row 2i on square
  // levels, keyed by the 1-based position j in the period.
  std::map<int, double> ne_lower;
};

struct LatticeSpec {
  int levels = 0;                // N
  std::vector<int> boundary;     // strictly increasing, starts at 1
  std::vector<int> pattern;      // period of level kinds: 1 hexagon, 0 square
  PeriodicWeights weights;

  int period() const { return static_cast<int>(pattern.size()); }
  // 1-based level queries, extended periodically.
  bool is_hexagon(int level) const;
  double upper_weight(int level) const;
  double lower_weight(int level) const;  // requires a square level
  int columns_beyond() const { return boundary.back() - levels; }  // Ω_N - N

  // Throws ValidationError on any invariant violation.
  void validate() const;
};

// Unit weights with the given level pattern.
LatticeSpec make_unit_spec(const std::vector<int>& boundary,
                           const std::vector<int>& pattern);

// Hexagon levels (single neighbour) and square levels (two neighbours) among
// 1..N.
std::pair<std::set<int>, std::set<int>> classify_levels(const LatticeSpec& spec);

enum class Color { kBlack, kWhite };
enum class EdgeDir { kNeSw, kNwSe, kVertical };

struct Vertex {
  int id = 0;
  int row = 0;   // 1-based
  int col = 0;   // 0-based within the row
  int x2 = 0;    // twice the abscissa
  Color color = Color::kWhite;
  bool is_virtual = false;  // gap of the boundary row, carries no edges
};

struct Edge {
  int id = 0;
  int white = 0;
  int black = 0;
  EdgeDir dir = EdgeDir::kNwSe;
  double weight = 1.0;
  int lower_row = 0;  // row of the lower endpoint

  bool ne_sw() const { return dir == EdgeDir::kNeSw; }
};

struct Face {
  std::vector<int> vertices;  // counterclockwise cycle
  std::vector<int> edges;     // edges[k] joins vertices[k] and vertices[k+1]
};

struct Graph {
  int levels = 0;
  std::vector<std::vector<int>> rows;  // rows[r-1]: vertex ids, left to right
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Face> faces;             // bounded faces only
  std::vector<std::vector<int>> incident;

  int num_rows() const { return static_cast<int>(rows.size()); }
  const Vertex& at(int row, int col) const {
    return vertices[rows[row - 1][col]];
  }
  // Real (non-virtual) vertices of one colour, sorted by id.
  std::vector<int> real_vertices(Color color) const;
  // Edge joining two vertices, or -1.
  int edge_between(int u, int v) const;
};

// Boundary made of integer runs [A_i, B_i] with A_i close to a_i N + 1 and
// run lengths close to (b_i - a_i) N, adding up to N.
std::vector<int> boundary_from_segments(
    int levels, const std::vector<std::pair<double, double>>& segments);
// Staircase boundary 1, 1 + M, 1 + 2M, ...
std::vector<int> boundary_staircase(int levels, int step);

// Number of vertices (virtual ones included) of each row, rows[r-1].
std::vector<int> row_widths(const LatticeSpec& spec);

Graph build_lattice(const LatticeSpec& spec);

}  // namespace sqhex

#endif  // SQHEX_LATTICE_H_
