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

#include "sqhex/kasteleyn.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "sqhex/errors.h"

namespace sqhex {

namespace {

constexpr double kClampSlack = 1e-9;

bool face_ok(const Face& f, const std::vector<int>& sign) {
  int prod = 1;
  for (int e : f.edges) prod *= sign[e];
  const int want = f.edges.size() % 4 == 0 ? -1 : 1;
  return prod == want;
}

}  // namespace

KasteleynSystem build_kasteleyn_with_signs(const Graph& g,
                                           const std::vector<int>& sign) {
  if (sign.size() != g.edges.size()) {
    throw ValidationError("one sign per edge required");
  }
  for (const Face& f : g.faces) {
    if (!face_ok(f, sign)) {
      throw ValidationError("sign assignment violates the face condition");
    }
  }
  KasteleynSystem k;
  k.graph = &g;
  k.whites = g.real_vertices(Color::kWhite);
  k.blacks = g.real_vertices(Color::kBlack);
  if (k.whites.size() != k.blacks.size()) {
    throw ValidationError("colour classes have different sizes");
  }
  k.white_index.assign(g.vertices.size(), -1);
  k.black_index.assign(g.vertices.size(), -1);
  for (size_t i = 0; i < k.whites.size(); ++i) k.white_index[k.whites[i]] = i;
  for (size_t i = 0; i < k.blacks.size(); ++i) k.black_index[k.blacks[i]] = i;
  k.sign = sign;
  const int n = k.size();
  k.matrix = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges) {
    k.matrix(k.white_index[e.white], k.black_index[e.black]) =
        sign[e.id] * e.weight;
  }
  return k;
}

KasteleynSystem build_kasteleyn(const Graph& g) {
  const int nv = static_cast<int>(g.vertices.size());
  const int ne = static_cast<int>(g.edges.size());
  std::vector<int> sign(ne, 0);
  // Spanning forest gets +1.
  std::vector<char> seen(nv, 0);
  for (int root = 0; root < nv; ++root) {
    if (seen[root] || g.vertices[root].is_virtual) continue;
    seen[root] = 1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int e : g.incident[v]) {
        const int w = g.edges[e].white == v ? g.edges[e].black : g.edges[e].white;
        if (seen[w]) continue;
        seen[w] = 1;
        sign[e] = 1;
        q.push(w);
      }
    }
  }
  // Peel faces with a single undecided edge.
  bool progress = true;
  while (progress) {
    progress = false;
    for (const Face& f : g.faces) {
      int unset = -1, count = 0, prod = 1;
      for (int e : f.edges) {
        if (sign[e] == 0) {
          unset = e;
          ++count;
        } else {
          prod *= sign[e];
        }
      }
      if (count != 1) continue;
      const int want = f.edges.size() % 4 == 0 ? -1 : 1;
      sign[unset] = prod == want ? 1 : -1;
      progress = true;
    }
  }
  for (int& s : sign) {
    if (s == 0) s = 1;  // edges on no bounded face
  }
  return build_kasteleyn_with_signs(g, sign);
}

double log_partition_function_kasteleyn(const KasteleynSystem& k) {
  if (k.size() == 0) return 0.0;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(k.matrix);
  const Eigen::MatrixXd& lu_mat = lu.matrixLU();
  double out = 0;
  for (int i = 0; i < k.size(); ++i) {
    const double d = std::abs(lu_mat(i, i));
    if (d == 0 || !std::isfinite(d)) {
      throw NumericError("singular signed adjacency matrix: no perfect matching");
    }
    out += std::log(d);
  }
  return out;
}

double partition_function_kasteleyn(const KasteleynSystem& k) {
  return std::exp(log_partition_function_kasteleyn(k));
}

std::vector<double> edge_marginals(const KasteleynSystem& k) {
  const Eigen::MatrixXd inv = k.matrix.partialPivLu().inverse();
  std::vector<double> out;
  for (const Edge& e : k.graph->edges) {
    const int w = k.white_index[e.white], b = k.black_index[e.black];
    out.push_back(k.matrix(w, b) * inv(b, w));
  }
  return out;
}

Matching sample_exact(const KasteleynSystem& k, Rng& rng) {
  const Graph& g = *k.graph;
  const int n = k.size();
  Eigen::MatrixXd mat = k.matrix;
  std::vector<char> white_alive(n, 1), black_alive(n, 1);
  Eigen::MatrixXd inv(n, n);

  auto refactor = [&]() {
    std::vector<int> ws, bs;
    for (int i = 0; i < n; ++i) {
      if (white_alive[i]) ws.push_back(i);
      if (black_alive[i]) bs.push_back(i);
    }
    const int m = static_cast<int>(ws.size());
    Eigen::MatrixXd sub(m, m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) sub(i, j) = mat(ws[i], bs[j]);
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(sub);
    const Eigen::MatrixXd sub_inv = lu.inverse();
    if (!sub_inv.allFinite()) throw NumericError("refactorization failed");
    inv.setZero();
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) inv(bs[i], ws[j]) = sub_inv(i, j);
    }
  };
  refactor();

  // One white vertex at a time: its partner is b with probability
  // K(w, b) K^-1(b, w), and these sum to one over the live neighbours.
  // Rank-one updates drift slowly; a failed sum check triggers a fresh
  // factorization.
  Matching out;
  for (int w = 0; w < n; ++w) {
    std::vector<std::pair<const Edge*, double>> options;
    auto collect = [&]() {
      options.clear();
      double total = 0;
      for (int eid : g.incident[k.whites[w]]) {
        const Edge& e = g.edges[eid];
        const int b = k.black_index[e.black];
        if (b < 0 || !black_alive[b]) continue;
        const double p = mat(w, b) * inv(b, w);
        options.push_back({&e, p});
        total += p;
      }
      bool ok = std::abs(total - 1) <= kClampSlack * 100;
      for (const auto& [e, p] : options) {
        ok = ok && std::isfinite(p) && p >= -kClampSlack && p <= 1 + kClampSlack;
      }
      return ok;
    };
    if (!collect()) {
      refactor();
      if (!collect()) throw NumericError("vertex probabilities do not sum to one");
    }
    double u = rng.uniform(), acc = 0;
    const Edge* chosen = nullptr;
    for (const auto& [e, p] : options) {
      acc += std::max(p, 0.0);
      chosen = e;
      if (u < acc) break;
    }
    if (chosen == nullptr) throw NumericError("white vertex without a live neighbour");
    const int b = k.black_index[chosen->black];
    const double pivot = inv(b, w);
    const Eigen::VectorXd col = inv.col(w);
    const Eigen::RowVectorXd row = inv.row(b);
    inv.noalias() -= col * row / pivot;
    white_alive[w] = 0;
    black_alive[b] = 0;
    inv.row(b).setZero();
    inv.col(w).setZero();
    out.push_back(chosen->id);
  }
  std::sort(out.begin(), out.end());
  if (static_cast<int>(out.size()) != n) {
    throw NumericError("sampler ended without a perfect matching");
  }
  return out;
}

void enumerate_matchings(const Graph& g, int64_t cap,
                         const std::function<void(const Matching&)>& visit) {
  const int nv = static_cast<int>(g.vertices.size());
  std::vector<char> used(nv, 0);
  int remaining = 0;
  for (const Vertex& v : g.vertices) {
    if (v.is_virtual) {
      used[v.id] = 1;
    } else {
      ++remaining;
    }
  }
  Matching cur;
  int64_t count = 0;
  std::function<void()> rec = [&]() {
    if (remaining == 0) {
      if (++count > cap) {
        throw ValidationError("more than " + std::to_string(cap) +
                              " matchings");
      }
      Matching sorted(cur);
      std::sort(sorted.begin(), sorted.end());
      visit(sorted);
      return;
    }
    // Branch on the free vertex with the fewest free neighbours.
    int best = -1, best_deg = 1 << 30;
    for (int v = 0; v < nv; ++v) {
      if (used[v]) continue;
      int deg = 0;
      for (int e : g.incident[v]) {
        const int w = g.edges[e].white == v ? g.edges[e].black : g.edges[e].white;
        if (!used[w]) ++deg;
      }
      if (deg < best_deg) {
        best_deg = deg;
        best = v;
      }
      if (deg == 0) return;
    }
    for (int e : g.incident[best]) {
      const int w =
          g.edges[e].white == best ? g.edges[e].black : g.edges[e].white;
      if (used[w]) continue;
      used[best] = used[w] = 1;
      remaining -= 2;
      cur.push_back(e);
      rec();
      cur.pop_back();
      remaining += 2;
      used[best] = used[w] = 0;
    }
  };
  rec();
}

std::vector<Matching> enumerate_matchings(const Graph& g, int64_t cap) {
  std::vector<Matching> out;
  enumerate_matchings(g, cap, [&](const Matching& m) { out.push_back(m); });
  return out;
}

}  // namespace sqhex
