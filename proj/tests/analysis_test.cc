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

#include <cmath>

#include "oracles.h"
#include "sqhex/analysis.h"
#include "sqhex/chain_sampler.h"
#include "sqhex/errors.h"
#include "sqhex/kasteleyn.h"

namespace sqhex {
namespace {

LimitModel staircase_model() {
  LatticeSpec p;
  p.pattern = {0, 1};
  p.weights.ne_upper = {1, 1};
  p.weights.ne_lower = {{1, 1.0}};
  return {BoundaryMeasureSpec::staircase(2), limit_weights(p)};
}

LatticeSpec hexagon_spec(int n) {
  std::vector<int> boundary;
  for (int i = 1; i <= n; ++i) boundary.push_back(2 * i - 1);
  return make_unit_spec(boundary, {1});
}

TEST_CASE("height function: base point, left column and local steps") {
  for (const auto& [boundary, pattern] : oracle::small_lattices()) {
    const LatticeSpec spec = make_unit_spec(boundary, pattern);
    const Graph g = build_lattice(spec);
    for (const Matching& m : enumerate_matchings(g, 10000)) {
      // Also checks the local rules against the row formula.
      const HeightField h = height_field(g, m);
      CHECK(h.at(0, 1) == 0);
      for (int r = 3; r <= g.num_rows(); r += 2) {
        if (h.has(0, r)) CHECK(h.at(0, r) - h.at(0, r - 2) == 2);
      }
      for (const auto& [p, v] : h.values) {
        for (int dx : {-1, 1}) {
          auto it = h.values.find({p.first + dx, p.second + 1});
          if (it == h.values.end()) continue;
          const int step = std::abs(it->second - v);
          CHECK((step == 1 || step == 3));
        }
      }
      const HeightField f = height_from_chain(spec, matching_to_chain(g, m));
      for (const auto& [p, v] : f.values) {
        if (h.has(p.first, p.second)) CHECK(h.at(p.first, p.second) == v);
      }
    }
  }
}

TEST_CASE("height agrees with the row formula on sampled matchings") {
  const LatticeSpec spec = make_unit_spec(boundary_staircase(25, 2), {0, 1});
  const Graph g = build_lattice(spec);
  for (const SignatureChain& c : sample_chains(spec, 4, 5)) {
    const HeightField h = height_field(g, chain_to_matching(g, c));
    CHECK(h.values.size() > 100);
  }
}

TEST_CASE("row measures") {
  const LatticeSpec spec = make_unit_spec(boundary_staircase(12, 2), {0, 1});
  const Signature omega = signature_from_boundary(spec.boundary);
  for (const SignatureChain& c : sample_chains(spec, 8, 10)) {
    CHECK(empirical_row_measure(c, 1).atoms == counting_measure(omega).atoms);
    CHECK(empirical_row_measure(c, 2 * spec.levels - 1).atoms.size() == 1);
    CHECK(empirical_row_measure(c, 2 * spec.levels).atoms.size() == 1);
    // Mass of the row carrying level fraction kappa, in units of N.
    for (double kappa : {0.25, 0.5}) {
      const int row = row_for_kappa(spec.levels, kappa);
      CHECK(empirical_row_measure(c, row).atoms.size() ==
            static_cast<size_t>(spec.levels - (row - 1) / 2));
    }
  }
  CHECK(signature_moment({3, 1, 0}, 1) == doctest::Approx((5.0 / 3 + 2.0 / 3) / 3));
}

TEST_CASE("averaged row CDF is close to the limit") {
  const LatticeSpec spec = make_unit_spec(boundary_staircase(80, 2), {0, 1});
  const auto chains = sample_chains(spec, 21, 200);
  const RowProfile profile(staircase_model(), 0.5);
  CHECK(row_cdf_distance(chains, 0.5, profile) < 0.05);
}

TEST_CASE("corner positions interlace") {
  const LatticeSpec spec = hexagon_spec(20);
  for (const SignatureChain& c : sample_chains(spec, 3, 50)) {
    for (int k = 1; k < 5; ++k) {
      const auto low = corner_positions(c, k);
      const auto high = corner_positions(c, k + 1);
      for (int l = 0; l < k; ++l) {
        CHECK(high[l] > low[l]);
        CHECK(low[l] >= high[l + 1]);
        if (l + 1 < k) CHECK(low[l] > low[l + 1]);
      }
    }
  }
}

TEST_CASE("corner constants for the hexagon") {
  const GueConstants limit = gue_constants(hexagon_spec(400), 1, GueCentering::kLimit);
  CHECK(limit.center == doctest::Approx(0.5).epsilon(0.01));
  CHECK(limit.spread == doctest::Approx(0.25).epsilon(0.01));
  CHECK_THROWS_AS(gue_constants(hexagon_spec(5), 5, GueCentering::kFiniteN), ValidationError);
}

TEST_CASE("corner fluctuations") {
  const LatticeSpec spec = hexagon_spec(60);
  const auto chains = sample_chains(spec, 31, 2000);
  GueOptions one;
  const GueReport r1 = gue_corner_test(spec, chains, one);
  CHECK(std::abs(r1.mean[0]) < 0.1);
  CHECK(r1.covariance[0][0] == doctest::Approx(1.0).epsilon(0.15));
  double skew = 0;
  for (const auto& v : r1.rescaled) skew += std::pow(v[0] - r1.mean[0], 3);
  skew /= r1.replicas * std::pow(r1.covariance[0][0], 1.5);
  CHECK(std::abs(skew) < 0.2);
  GueOptions two;
  two.k = 2;
  const GueReport r2 = gue_corner_test(spec, chains, two);
  CHECK(r2.repulsion);
  CHECK(r2.small_gap_gue == doctest::Approx(oracle::gue2_small_gap(0.5, 400000, 1)).epsilon(0.1));
  CHECK(r2.small_gap_fraction < r2.small_gap_independent);
  GueOptions few;
  few.min_replicas = 5000;
  CHECK_THROWS_AS(gue_corner_test(spec, chains, few), ValidationError);
}

TEST_CASE("uncorrected centering drifts to zero as N grows") {
  double previous = INFINITY;
  for (int n : {40, 60, 80}) {
    const LatticeSpec spec = hexagon_spec(n);
    GueOptions o;
    o.centering = GueCentering::kLimit;
    const GueReport r = gue_corner_test(spec, sample_chains(spec, 100 + n, 20000), o);
    CHECK(std::abs(r.mean_offset) < previous);
    previous = std::abs(r.mean_offset);
  }
}

TEST_CASE("height law of large numbers") {
  const LimitModel model = staircase_model();
  double previous = INFINITY;
  for (int n : {40, 100}) {
    const LatticeSpec spec = make_unit_spec(boundary_staircase(n, 2), {0, 1});
    const auto chains = sample_chains(spec, 1, 3);
    const LlnReport r = height_lln_test(spec, chains, model, 9, 12);
    CHECK(r.mean_sup_error < previous);
    CHECK(r.mean_l1_error <= r.l1_error + 1e-12);
    previous = r.mean_sup_error;
    // The left column is deterministic.
    for (int t = 0; t < n; t += n / 10) {
      const double limit = limit_height(0, static_cast<double>(t) / n, model);
      for (const SignatureChain& c : chains) {
        CHECK(height_from_chain(spec, c).at(0, 2 * t + 1) / static_cast<double>(n) ==
              doctest::Approx(limit));
      }
    }
  }
}

}  // namespace
}  // namespace sqhex
