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

// Signed bipartite adjacency matrices, determinants, exact sampling and a
// brute-force matching enumerator.

#ifndef SQHEX_KASTELEYN_H_
#define SQHEX_KASTELEYN_H_

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "sqhex/lattice.h"
#include "sqhex/rng.h"
#include "sqhex/signatures.h"

namespace sqhex {

struct KasteleynSystem {
  const Graph* graph = nullptr;
  std::vector<int> whites, blacks;          // real vertices, by id
  std::vector<int> white_index, black_index;  // vertex id -> row/col, or -1
  std::vector<int> sign;                    // per edge, +1 or -1
  Eigen::MatrixXd matrix;                   // rows whites, cols blacks

  int size() const { return static_cast<int>(whites.size()); }
};

// Chooses signs so that every bounded face of degree 4 has sign product -1
// and every face of degree 6 has +1. The graph must outlive the system.
KasteleynSystem build_kasteleyn(const Graph& g);
// Same with caller-provided signs; verified face by face.
KasteleynSystem build_kasteleyn_with_signs(const Graph& g,
                                           const std::vector<int>& sign);

double log_partition_function_kasteleyn(const KasteleynSystem& k);
double partition_function_kasteleyn(const KasteleynSystem& k);

// One Boltzmann-distributed perfect matching.
Matching sample_exact(const KasteleynSystem& k, Rng& rng);

// Probability that each edge is present, K(w,b) K^{-1}(b,w).
std::vector<double> edge_marginals(const KasteleynSystem& k);

// Calls visit on every perfect matching. Throws ValidationError when more
// than cap matchings exist.
void enumerate_matchings(const Graph& g, int64_t cap,
                         const std::function<void(const Matching&)>& visit);
std::vector<Matching> enumerate_matchings(const Graph& g, int64_t cap = 100000);

}  // namespace sqhex

#endif  // SQHEX_KASTELEYN_H_
