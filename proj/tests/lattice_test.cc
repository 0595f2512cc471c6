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

#include <doctest.h>

#include <set>

#include "sqhex/errors.h"
#include "sqhex/kasteleyn.h"
#include "sqhex/lattice.h"

namespace sqhex {
namespace {

int vertical_edges(const Graph& g, const Face& f) {
  int n = 0;
  for (int e : f.edges) n += g.edges[e].dir == EdgeDir::kVertical;
  return n;
}

TEST_CASE("mixed three-level lattice has seven rows and one square level") {
  const LatticeSpec spec = make_unit_spec({1, 3, 6}, {1, 0, 1});
  const Graph g = build_lattice(spec);
  CHECK(g.num_rows() == 7);
  const auto [hexagon, square] = classify_levels(spec);
  CHECK(square == std::set<int>{2});
  CHECK(hexagon == std::set<int>{1, 3});
  int six = 0;
  for (const Face& f : g.faces) {
    // Hexagonal faces are exactly those bounded by vertical edges.
    CHECK((f.vertices.size() == 6) == (vertical_edges(g, f) > 0));
    if (f.vertices.size() == 6) {
      ++six;
      CHECK(vertical_edges(g, f) == 2);
    }
  }
  CHECK(six > 0);
}

TEST_CASE("all-square lattice has only square faces") {
  const Graph g = build_lattice(make_unit_spec({1, 3, 5, 6}, {0}));
  CHECK(g.num_rows() == 9);
  for (const Face& f : g.faces) CHECK(f.vertices.size() == 4);
  CHECK(g.faces.size() > 0);
}

TEST_CASE("single hexagon level has three rows and one matching") {
  const Graph g = build_lattice(make_unit_spec({1}, {1}));
  CHECK(g.num_rows() == 3);
  CHECK(enumerate_matchings(g).size() == 1);
}

TEST_CASE("level classes follow the pattern") {
  const LatticeSpec squares = make_unit_spec({1, 2, 3, 4}, {0});
  CHECK(classify_levels(squares).second == std::set<int>{1, 2, 3, 4});
  CHECK(classify_levels(squares).first.empty());
  const LatticeSpec hexagons = make_unit_spec({1, 2, 3, 4}, {1});
  CHECK(classify_levels(hexagons).second.empty());
}

TEST_CASE("row widths match the built rows") {
  for (const auto& [boundary, pattern] :
       std::vector<std::pair<std::vector<int>, std::vector<int>>>{
           {{1, 3, 6}, {1, 0, 1}}, {{1, 3, 5, 6}, {0}}, {{1, 2, 4, 9}, {0, 1}}}) {
    const LatticeSpec spec = make_unit_spec(boundary, pattern);
    const Graph g = build_lattice(spec);
    const std::vector<int> width = row_widths(spec);
    REQUIRE(static_cast<int>(width.size()) == g.num_rows());
    for (int r = 1; r <= g.num_rows(); ++r) {
      CHECK(static_cast<int>(g.rows[r - 1].size()) == width[r - 1]);
    }
    // Each level removes one column; a square level first adds one.
    CHECK(width.back() == boundary.back() - spec.levels +
                              static_cast<int>(classify_levels(spec).second.size()));
  }
}

TEST_CASE("every edge joins adjacent rows of opposite colour") {
  const Graph g = build_lattice(make_unit_spec({1, 2, 4, 7}, {0, 1}));
  for (const Edge& e : g.edges) {
    const Vertex& w = g.vertices[e.white];
    const Vertex& b = g.vertices[e.black];
    CHECK(w.color == Color::kWhite);
    CHECK(b.color == Color::kBlack);
    CHECK(std::abs(w.row - b.row) == 1);
    CHECK(std::abs(w.x2 - b.x2) == 1);
    CHECK_FALSE(w.is_virtual);
  }
}

TEST_CASE("boundary from segments") {
  CHECK(boundary_from_segments(4, {{0, 0.5}, {1, 1.5}}) == std::vector<int>{1, 2, 5, 6});
  for (int n : {7, 20, 33}) {
    const auto b = boundary_from_segments(n, {{0, 0.25}, {0.5, 0.75}, {1, 1.25}, {1.5, 1.75}});
    REQUIRE(static_cast<int>(b.size()) == n);
    CHECK(b.front() == 1);
    for (size_t k = 1; k < b.size(); ++k) CHECK(b[k] > b[k - 1]);
  }
  CHECK_THROWS_AS(boundary_from_segments(4, {{0.5, 1.5}}), ValidationError);
  CHECK_THROWS_AS(boundary_from_segments(4, {{0, 0}}), ValidationError);
  CHECK(boundary_staircase(3, 2) == std::vector<int>{1, 3, 5});
}

TEST_CASE("invalid specs are rejected") {
  CHECK_THROWS_AS(build_lattice(make_unit_spec({2, 3}, {1})), ValidationError);
  CHECK_THROWS_AS(build_lattice(make_unit_spec({1, 1}, {1})), ValidationError);
  CHECK_THROWS_AS(build_lattice(make_unit_spec({1, 2}, {2})), ValidationError);
  LatticeSpec spec = make_unit_spec({1, 2}, {0});
  spec.weights.ne_lower.clear();
  CHECK_THROWS_AS(spec.validate(), ValidationError);
  spec = make_unit_spec({1, 2}, {1});
  spec.weights.ne_lower[1] = 2.0;
  CHECK_THROWS_AS(spec.validate(), ValidationError);
  spec = make_unit_spec({1, 2}, {1});
  spec.weights.ne_upper[0] = -1;
  CHECK_THROWS_AS(spec.validate(), ValidationError);
}

}  // namespace
}  // namespace sqhex
