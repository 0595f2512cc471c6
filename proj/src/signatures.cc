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

#include "sqhex/signatures.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "sqhex/errors.h"

namespace sqhex {

int size_of(const Signature& s) { return std::accumulate(s.begin(), s.end(), 0); }

bool is_signature(const Signature& s) {
  for (size_t i = 1; i < s.size(); ++i) {
    if (s[i] > s[i - 1]) return false;
  }
  return true;
}

bool interlaces(const Signature& small, const Signature& big) {
  if (small.size() != big.size() && small.size() + 1 != big.size()) {
    throw ValidationError("interlacing needs lengths l or l-1");
  }
  for (size_t i = 0; i < small.size(); ++i) {
    if (small[i] > big[i]) return false;
    if (i + 1 < big.size() && small[i] < big[i + 1]) return false;
  }
  return true;
}

bool cointerlaces(const Signature& small, const Signature& big) {
  if (small.size() != big.size()) {
    throw ValidationError("cointerlacing needs equal lengths");
  }
  for (size_t i = 0; i < small.size(); ++i) {
    const int d = big[i] - small[i];
    if (d < 0 || d > 1) return false;
  }
  return is_signature(small) && is_signature(big);
}

Signature signature_from_boundary(const std::vector<int>& boundary) {
  const int n = static_cast<int>(boundary.size());
  Signature out(n);
  for (int k = 1; k <= n; ++k) out[k - 1] = boundary[n - k] - (n + 1 - k);
  return out;
}

MayaDiagram signature_to_maya(const Signature& s, int max_part) {
  const int len = static_cast<int>(s.size());
  if (!is_signature(s)) throw ValidationError("not a signature");
  if (len > 0 && (s.front() > max_part || s.back() < 0)) {
    throw ValidationError("signature does not fit in the box");
  }
  MayaDiagram maya(len + max_part, false);
  for (int i = 1; i <= len; ++i) maya[s[i - 1] + len - i] = true;
  return maya;
}

Signature maya_to_signature(const MayaDiagram& maya) {
  std::vector<int> pos;
  for (int p = 0; p < static_cast<int>(maya.size()); ++p) {
    if (maya[p]) pos.push_back(p);
  }
  const int len = static_cast<int>(pos.size());
  Signature s(len);
  for (int i = 1; i <= len; ++i) s[i - 1] = pos[len - i] - (len - i);
  return s;
}

int maya_origin(const MayaDiagram& maya) {
  const int total = static_cast<int>(maya.size());
  int holes_right = static_cast<int>(std::count(maya.begin(), maya.end(), false));
  int particles_left = 0;
  for (int cut = 0; cut <= total; ++cut) {
    if (particles_left == holes_right) return cut;
    if (cut < total) {
      if (maya[cut]) {
        ++particles_left;
      } else {
        --holes_right;
      }
    }
  }
  throw NumericError("Maya diagram without origin");
}

int row_of_odd(int levels, int len) { return 2 * (levels - len) + 1; }
int row_of_even(int levels, int len) { return 2 * (levels - len + 1); }

const Signature& SignatureChain::odd(int len) const {
  return rows[row_of_odd(levels(), len) - 1];
}
const Signature& SignatureChain::even(int len) const {
  return rows[row_of_even(levels(), len) - 1];
}

void check_perfect(const Graph& g, const Matching& m) {
  std::vector<int> cover(g.vertices.size(), 0);
  for (int e : m) {
    if (e < 0 || e >= static_cast<int>(g.edges.size())) {
      throw ValidationError("edge id out of range");
    }
    ++cover[g.edges[e].white];
    ++cover[g.edges[e].black];
  }
  for (const Vertex& v : g.vertices) {
    const int want = v.is_virtual ? 0 : 1;
    if (cover[v.id] != want) {
      throw ValidationError("not a perfect matching at vertex " +
                            std::to_string(v.id));
    }
  }
}

std::vector<MayaDiagram> matching_to_maya(const Graph& g, const Matching& m) {
  check_perfect(g, m);
  std::vector<int> partner(g.vertices.size(), -1);
  for (int e : m) {
    partner[g.edges[e].white] = g.edges[e].black;
    partner[g.edges[e].black] = g.edges[e].white;
  }
  std::vector<MayaDiagram> out(g.num_rows());
  for (int r = 1; r <= g.num_rows(); ++r) {
    for (int id : g.rows[r - 1]) {
      const Vertex& v = g.vertices[id];
      bool particle = false;
      if (!v.is_virtual) {
        const int pr = g.vertices[partner[id]].row;
        particle = v.color == Color::kWhite ? pr > r : pr < r;
      }
      out[r - 1].push_back(particle);
    }
  }
  return out;
}

SignatureChain matching_to_chain(const Graph& g, const Matching& m) {
  SignatureChain chain;
  for (const MayaDiagram& maya : matching_to_maya(g, m)) {
    chain.rows.push_back(maya_to_signature(maya));
  }
  return chain;
}

Matching chain_to_matching(const Graph& g, const SignatureChain& chain) {
  if (chain.rows.size() != g.rows.size()) {
    throw ValidationError("chain length does not match the graph");
  }
  std::vector<MayaDiagram> maya(g.num_rows());
  for (int r = 1; r <= g.num_rows(); ++r) {
    const int width = static_cast<int>(g.rows[r - 1].size());
    const Signature& s = chain.rows[r - 1];
    maya[r - 1] = signature_to_maya(s, width - static_cast<int>(s.size()));
  }
  Matching m;
  auto pair_rows = [&](int lower, int upper, bool particles) {
    std::vector<int> a, b;
    for (int c = 0; c < static_cast<int>(maya[lower - 1].size()); ++c) {
      if (maya[lower - 1][c] == particles) a.push_back(g.rows[lower - 1][c]);
    }
    for (int c = 0; c < static_cast<int>(maya[upper - 1].size()); ++c) {
      if (maya[upper - 1][c] == particles) b.push_back(g.rows[upper - 1][c]);
    }
    if (a.size() != b.size()) {
      throw ValidationError("chain rows do not pair up");
    }
    for (size_t k = 0; k < a.size(); ++k) {
      const int e = g.edge_between(a[k], b[k]);
      if (e < 0) throw ValidationError("chain implies a missing edge");
      m.push_back(e);
    }
  };
  for (int s = 1; s <= g.levels; ++s) {
    pair_rows(2 * s - 1, 2 * s, true);
    pair_rows(2 * s, 2 * s + 1, false);
  }
  std::sort(m.begin(), m.end());
  check_perfect(g, m);
  return m;
}

void check_chain(const LatticeSpec& spec, const SignatureChain& chain) {
  const int n = spec.levels;
  if (static_cast<int>(chain.rows.size()) != 2 * n + 1) {
    throw ValidationError("chain must have 2N+1 rows");
  }
  if (chain.rows[0] != signature_from_boundary(spec.boundary)) {
    throw ValidationError("chain does not start at the boundary signature");
  }
  for (int len = 0; len <= n; ++len) {
    const Signature& s = chain.odd(len);
    if (static_cast<int>(s.size()) != len || !is_signature(s) ||
        (len > 0 && s.back() < 0)) {
      throw ValidationError("bad odd-row signature");
    }
  }
  for (int i = 1; i <= n; ++i) {
    const int len = n - i + 1;
    const Signature& below = chain.odd(len);
    const Signature& mid = chain.even(len);
    const Signature& above = chain.odd(len - 1);
    if (mid.size() != below.size() || !cointerlaces(below, mid)) {
      throw ValidationError("square half-step is not a vertical strip");
    }
    if (spec.is_hexagon(i) && mid != below) {
      throw ValidationError("hexagon level must keep the signature");
    }
    if (!interlaces(above, mid)) {
      throw ValidationError("upper half-step is not a horizontal strip");
    }
  }
}

CountingMeasure counting_measure(const Signature& s) {
  const int len = static_cast<int>(s.size());
  CountingMeasure m;
  for (int i = 1; i <= len; ++i) {
    m.atoms.push_back(static_cast<double>(s[i - 1] + len - i) / len);
  }
  return m;
}

int NeSwCounts::total() const {
  return std::accumulate(lower.begin(), lower.end(), 0) +
         std::accumulate(upper.begin(), upper.end(), 0);
}

int NeSwCounts::signed_total() const {
  return std::accumulate(upper.begin(), upper.end(), 0) -
         std::accumulate(lower.begin(), lower.end(), 0);
}

NeSwCounts count_ne_sw(const Graph& g, const Matching& m) {
  NeSwCounts c;
  c.lower.assign(g.levels, 0);
  c.upper.assign(g.levels, 0);
  for (int e : m) {
    const Edge& edge = g.edges[e];
    if (!edge.ne_sw()) continue;
    const int level = (edge.lower_row + 1) / 2;
    if (edge.lower_row % 2 == 1) {
      ++c.lower[level - 1];
    } else {
      ++c.upper[level - 1];
    }
  }
  return c;
}

double matching_weight(const Graph& g, const Matching& m) {
  double w = 1.0;
  for (int e : m) w *= g.edges[e].weight;
  return w;
}

}  // namespace sqhex
