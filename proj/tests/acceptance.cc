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

// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "oracles.h"
#include "sqhex/analysis.h"
#include "sqhex/chain_sampler.h"
#include "sqhex/kasteleyn.h"
#include "sqhex/lattice.h"
#include "sqhex/limitshape.h"
#include "sqhex/schur.h"
#include "sqhex/signatures.h"

namespace sqhex {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

LatticeSpec mixed_spec() { return make_unit_spec({1, 3, 6}, {1, 0, 1}); }

LimitModel staircase_model() {
  LatticeSpec p;
  p.pattern = {0, 1};
  p.weights.ne_upper = {1, 1};
  p.weights.ne_lower = {{1, 1.0}};
  return {BoundaryMeasureSpec::staircase(2), limit_weights(p)};
}

LatticeSpec staircase_spec(int n) { return make_unit_spec(boundary_staircase(n, 2), {0, 1}); }

Outcome triple_identity() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.3, 2.5);
  double worst = 0;
  for (int draw = 0; draw < 20; ++draw) {
    LatticeSpec spec = mixed_spec();
    spec.weights.ne_upper = {u(rng), u(rng), u(rng)};
    spec.weights.ne_lower[2] = u(rng);
    const Graph g = build_lattice(spec);
    const double schur = partition_function_schur(spec);
    const double kast = partition_function_kasteleyn(build_kasteleyn(g));
    const double brute = oracle::partition_function(g);
    const auto& x = spec.weights.ne_upper;
    const double expansion = oracle::mixed_three_level_z(x[0], x[1], x[2], spec.weights.ne_lower[2]);
    for (double v : {kast, brute, expansion}) worst = std::max(worst, std::abs(v - schur) / schur);
  }
  const double unit = partition_function_schur(mixed_spec());
  const double unit_kast = partition_function_kasteleyn(build_kasteleyn(build_lattice(mixed_spec())));
  const bool pass = worst < 1e-10 && std::abs(unit - 60) < 1e-9 && std::abs(unit_kast - 60) < 1e-9;
  return {pass, fmt("max rel err %.2e, unit Z %.12g / %.12g", worst, unit, unit_kast)};
}

Outcome kernel_normalization() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  const auto sigs = oracle::all_signatures(5, 5);
  double worst = 0;
  for (const Signature& s : sigs) {
    for (int draw = 0; draw < 50; ++draw) {
      std::vector<double> beta(s.size());
      for (double& b : beta) b = u(rng);
      double pr = 0, st = 0;
      for (const auto& [t, p] : pr_kernel(s, beta)) pr += p;
      for (const auto& [t, p] : st_kernel(s, beta)) st += p;
      worst = std::max({worst, std::abs(pr - 1), std::abs(st - 1)});
    }
  }
  return {worst < 1e-12, fmt("%zu signatures, max |sum - 1| %.2e", sigs.size(), worst)};
}

// Every boundary inside {1..7} with up to four levels, under every pattern.
std::vector<LatticeSpec> bookkeeping_lattices() {
  std::vector<LatticeSpec> out;
  for (int mask = 0; mask < (1 << 6); ++mask) {
    std::vector<int> boundary = {1};
    for (int b = 0; b < 6; ++b) {
      if (mask & (1 << b)) boundary.push_back(b + 2);
    }
    const int n = static_cast<int>(boundary.size());
    if (n > 4) continue;
    for (int p = 0; p < (1 << n); ++p) {
      std::vector<int> pattern(n);
      for (int j = 0; j < n; ++j) pattern[j] = (p >> j) & 1;
      out.push_back(make_unit_spec(boundary, pattern));
    }
  }
  return out;
}

// The plain NE-SW total equals |omega| only without square levels; each square
// level contributes as many lower as extra upper edges, so upper minus lower
// is the invariant that holds everywhere.
Outcome bijection_bookkeeping() {
  int graphs = 0, hexagon_graphs = 0;
  long matchings = 0, failures = 0, plain_total_off = 0;
  for (const LatticeSpec& spec : bookkeeping_lattices()) {
    if (partition_function_schur(spec) > 1e4) continue;
    ++graphs;
    const Graph g = build_lattice(spec);
    const int n = spec.levels;
    const int omega_size = size_of(signature_from_boundary(spec.boundary));
    const bool hexagon_only = classify_levels(spec).second.empty();
    if (hexagon_only) ++hexagon_graphs;
    enumerate_matchings(g, 10000, [&](const Matching& m) {
      ++matchings;
      const SignatureChain chain = matching_to_chain(g, m);
      bool ok = chain_to_matching(g, chain) == m;
      const NeSwCounts counts = count_ne_sw(g, m);
      ok = ok && counts.signed_total() == omega_size;
      if (hexagon_only) ok = ok && counts.total() == omega_size;
      if (counts.total() != omega_size) ++plain_total_off;
      for (int j = 1; j <= n; ++j) {
        ok = ok && counts.upper[j - 1] == size_of(chain.even(n - j + 1)) - size_of(chain.odd(n - j));
        const int lower = spec.is_hexagon(j)
                              ? 0
                              : size_of(chain.even(n - j + 1)) - size_of(chain.odd(n - j + 1));
        ok = ok && counts.lower[j - 1] == lower;
      }
      if (!ok) ++failures;
    });
  }
  return {failures == 0,
          fmt("%d graphs (%d hexagon only), %ld matchings, %ld failures; plain total differs "
              "from |omega| on %ld matchings with square levels",
              graphs, hexagon_graphs, matchings, failures, plain_total_off)};
}

struct FitResult {
  double tv = 0, p_value = 0;
};

FitResult uniform_fit(const std::vector<long>& counts, long samples) {
  const double expected = static_cast<double>(samples) / counts.size();
  double tv = 0, chi2 = 0;
  for (long c : counts) {
    tv += std::abs(c - expected);
    chi2 += (c - expected) * (c - expected) / expected;
  }
  const boost::math::chi_squared_distribution<double> dist(static_cast<double>(counts.size() - 1));
  return {0.5 * tv / samples, boost::math::cdf(boost::math::complement(dist, chi2))};
}

Outcome sampler_exactness() {
  const LatticeSpec spec = mixed_spec();
  const Graph g = build_lattice(spec);
  std::map<Matching, int> index;
  for (const Matching& m : enumerate_matchings(g)) index.emplace(m, static_cast<int>(index.size()));
  const long samples = 100000;
  std::vector<long> chain_counts(index.size()), exact_counts(index.size());
  for (const SignatureChain& c : sample_chains(spec, 1, samples)) {
    ++chain_counts[index.at(chain_to_matching(g, c))];
  }
  const KasteleynSystem k = build_kasteleyn(g);
  Rng rng(1, 0);
  for (long s = 0; s < samples; ++s) ++exact_counts[index.at(sample_exact(k, rng))];
  const FitResult a = uniform_fit(chain_counts, samples);
  const FitResult b = uniform_fit(exact_counts, samples);
  const bool pass = index.size() == 60 && a.tv < 0.01 && a.p_value > 0.001 && b.tv < 0.01 &&
                    b.p_value > 0.001;
  return {pass, fmt("chain sampler TV %.4f p %.3f; determinantal sampler TV %.4f p %.3f", a.tv,
                    a.p_value, b.tv, b.p_value)};
}

Outcome quartic_boundary() {
  const FrozenBoundaryCurve curve = frozen_boundary_general(staircase_model(), 200);
  double worst = 0;
  for (const CurveSample& p : curve.samples) {
    worst = std::max(worst, std::abs(oracle::staircase_quartic(p.chi, p.kappa)));
  }
  return {curve.samples.size() >= 200 && worst < 1e-8,
          fmt("%zu samples, max residual %.2e", curve.samples.size(), worst)};
}

Outcome aztec_tangencies() {
  LatticeSpec p;
  p.pattern = {0, 0};
  p.weights.ne_upper = {1, 1};
  p.weights.ne_lower = {{1, 4.0}, {2, 0.25}};
  const LimitModel model{
      BoundaryMeasureSpec::from_intervals({{0, 0.25}, {0.5, 0.75}, {1, 1.25}, {1.5, 1.75}}),
      limit_weights(p)};
  const FrozenBoundaryCurve curve = frozen_boundary(model, 400);
  const int bottom = curve.count("kappa=0");
  return {bottom == 11, fmt("%d bottom tangencies, rank %d", bottom, curve.rank)};
}

Outcome density_spot() {
  const double d = density_at(1, 0.001, staircase_model());
  return {std::abs(d - 0.5) <= 0.01, fmt("density %.5f", d)};
}

Outcome height_lln() {
  const LatticeSpec spec = staircase_spec(100);
  const auto chains = sample_chains(spec, 1, 3);
  const LlnReport r = height_lln_test(spec, chains, staircase_model(), 9, 12);
  return {r.mean_sup_error < 0.05,
          fmt("sup error of the averaged height %.4f (worst single sample %.4f), %d grid points",
              r.mean_sup_error, r.sup_error, r.points)};
}

Outcome gue_corners() {
  std::vector<int> boundary;
  for (int i = 1; i <= 60; ++i) boundary.push_back(2 * i - 1);
  const LatticeSpec spec = make_unit_spec(boundary, {1});
  const auto chains = sample_chains(spec, 11, 5000);
  GueOptions one;
  const GueReport r1 = gue_corner_test(spec, chains, one);
  GueOptions two;
  two.k = 2;
  const GueReport r2 = gue_corner_test(spec, chains, two);
  const double mean = r1.mean[0], var = r1.covariance[0][0];
  const bool pass = std::abs(mean) < 0.05 && std::abs(var - 1) < 0.15 && r2.repulsion;
  return {pass, fmt("k=1 mean %.4f variance %.4f (KS %.3f); k=2 small gaps %.4f vs GUE %.4f, "
                    "independent %.4f (sigma %.4f)",
                    mean, var, r1.ks_distance, r2.small_gap_fraction, r2.small_gap_gue,
                    r2.small_gap_independent, r2.small_gap_sigma)};
}

Outcome staircase_free_energy() {
  const double limit = free_energy_staircase(2, make_unit_spec({1, 2}, {1, 1}));
  std::string detail = fmt("F %.6f; gaps", limit);
  double previous = INFINITY;
  bool decreasing = true;
  for (int n : {20, 40, 60}) {
    const double z = log_partition_function_schur(make_unit_spec(boundary_staircase(n, 2), {1, 1}));
    const double gap = std::abs(z / (static_cast<double>(n) * n) - limit);
    decreasing = decreasing && gap < previous;
    previous = gap;
    detail += fmt(" N=%d:%.5f", n, gap);
  }
  return {decreasing && previous < 0.05, detail};
}

Outcome moment_consistency() {
  const LimitModel model = staircase_model();
  const auto chains = sample_chains(staircase_spec(80), 2, 200);
  double worst = 0;
  std::string detail;
  for (double kappa : {0.25, 0.5, 0.75}) {
    const RowMomentReport r = row_moments(chains, kappa, 2);
    for (int j = 1; j <= 2; ++j) {
      const double exact = moment(kappa, j, model);
      const double rel = (r.empirical[j - 1] - exact) / exact;
      worst = std::max(worst, std::abs(rel));
      detail += fmt("%s k=%.2f j=%d %+.4f", detail.empty() ? "" : ",", kappa, j, rel);
    }
  }
  return {worst < 0.03, "relative errors" + detail};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace sqhex

int main() {
  using namespace sqhex;
  const std::vector<Criterion> criteria = {
      {1, "partition function triple identity", 1, triple_identity},
      {2, "transition kernel normalization", 30, kernel_normalization},
      {3, "bijection and NE-SW bookkeeping", 60, bijection_bookkeeping},
      {4, "sampler exactness", 60, sampler_exactness},
      {5, "quartic frozen boundary", 1, quartic_boundary},
      {6, "Aztec tangency count", 1, aztec_tangencies},
      {7, "density spot value", 0.1, density_spot},
      {8, "height law of large numbers", 300, height_lln},
      {9, "GUE corners", 1800, gue_corners},
      {10, "staircase free energy", 60, staircase_free_energy},
      {11, "moment consistency", 600, moment_consistency},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.budget_seconds;
    const bool pass = out.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s criterion %d (%s): %s; %.3f s of %.1f s%s\n", pass ? "PASS" : "FAIL", c.id,
                c.name, out.detail.c_str(), seconds, c.budget_seconds,
                in_time ? "" : " (over budget)");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
