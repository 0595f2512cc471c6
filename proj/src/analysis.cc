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

#include "sqhex/analysis.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <string>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include "sqhex/errors.h"

namespace sqhex {

int HeightField::at(int x, int y) const {
  auto it = values.find({x, y});
  if (it == values.end()) {
    throw ValidationError("no height at (" + std::to_string(x) + ", " +
                          std::to_string(y) + ")");
  }
  return it->second;
}

HeightField height_from_chain(const LatticeSpec& spec, const SignatureChain& chain) {
  check_chain(spec, chain);
  const std::vector<int> width = row_widths(spec);
  HeightField h;
  for (int r = 1; r <= static_cast<int>(chain.rows.size()); r += 2) {
    const Signature& s = chain.rows[r - 1];
    const MayaDiagram maya =
        signature_to_maya(s, width[r - 1] - static_cast<int>(s.size()));
    int particles = 0;
    for (int i = 0; i <= static_cast<int>(maya.size()); ++i) {
      h.values[{2 * i, r}] = (r - 1) + 4 * particles - 2 * i;
      if (i < static_cast<int>(maya.size()) && maya[i]) ++particles;
    }
  }
  return h;
}

HeightField height_field(const Graph& g, const Matching& m) {
  std::map<std::pair<int, int>, int> vertex_at;
  int max_x = 0;
  for (const Vertex& v : g.vertices) {
    if (v.is_virtual) continue;
    vertex_at[{v.x2, v.row}] = v.id;
    max_x = std::max(max_x, v.x2);
  }
  const std::set<int> dimers(m.begin(), m.end());
  const int nrows = g.num_rows();

  HeightField h;
  std::deque<std::pair<int, int>> queue;
  h.values[{0, 1}] = 0;
  queue.push_back({0, 1});
  while (!queue.empty()) {
    const auto [x, y] = queue.front();
    queue.pop_front();
    const int here = h.values[{x, y}];
    for (int dx : {-1, 1}) {
      for (int dy : {-1, 1}) {
        const int qx = x + dx, qy = y + dy;
        if (qy < 1 || qy > nrows || qx < -1 || qx > max_x + 1) continue;
        auto a = vertex_at.find({x + dx, y});
        auto b = vertex_at.find({x, y + dy});
        if (a == vertex_at.end() || b == vertex_at.end()) continue;
        // Vertex on the left of the step.
        const int left = dx * dy < 0 ? a->second : b->second;
        const bool white = g.vertices[left].color == Color::kWhite;
        const int e = g.edge_between(a->second, b->second);
        const bool dimer = e >= 0 && dimers.count(e) > 0;
        const int step = dimer ? (white ? -3 : 3) : (white ? 1 : -1);
        auto [it, fresh] = h.values.insert({{qx, qy}, here + step});
        if (fresh) {
          queue.push_back({qx, qy});
        } else if (it->second != here + step) {
          throw NumericError("height local rules are not path independent");
        }
      }
    }
  }

  // The row formula must agree wherever both are defined.
  const std::vector<MayaDiagram> maya = matching_to_maya(g, m);
  for (int r = 1; r <= nrows; r += 2) {
    int particles = 0;
    for (int i = 0; i <= static_cast<int>(maya[r - 1].size()); ++i) {
      auto it = h.values.find({2 * i, r});
      if (it != h.values.end() && it->second != (r - 1) + 4 * particles - 2 * i) {
        throw NumericError("height formula disagrees with the local rules at row " +
                           std::to_string(r));
      }
      if (i < static_cast<int>(maya[r - 1].size()) && maya[r - 1][i]) ++particles;
    }
  }
  return h;
}

int row_for_kappa(int levels, double kappa) {
  if (!(kappa >= 0 && kappa < 1)) throw ValidationError("kappa must lie in [0, 1)");
  const int t = std::min(static_cast<int>(std::floor(kappa * levels)), levels - 1);
  return 2 * t + 1;
}

CountingMeasure empirical_row_measure(const SignatureChain& chain, int row) {
  if (row < 1 || row > static_cast<int>(chain.rows.size())) {
    throw ValidationError("row out of range");
  }
  return counting_measure(chain.rows[row - 1]);
}

double signature_moment(const Signature& s, int j) {
  const CountingMeasure m = counting_measure(s);
  if (m.atoms.empty()) return 0;
  double sum = 0;
  for (double a : m.atoms) sum += std::pow(a, j);
  return sum / static_cast<double>(m.atoms.size());
}

RowMomentReport row_moments(const std::vector<SignatureChain>& chains,
                            double kappa, int max_moment) {
  if (chains.empty()) throw ValidationError("no samples");
  RowMomentReport out;
  out.kappa = kappa;
  out.row = row_for_kappa(chains.front().levels(), kappa);
  const double count = static_cast<double>(chains.size());
  for (int j = 1; j <= max_moment; ++j) {
    double sum = 0, sum2 = 0;
    for (const SignatureChain& c : chains) {
      const double v = signature_moment(c.rows[out.row - 1], j);
      sum += v;
      sum2 += v * v;
    }
    const double mean = sum / count;
    const double var = chains.size() > 1
                           ? std::max(0.0, (sum2 - count * mean * mean) / (count - 1))
                           : 0.0;
    out.empirical.push_back(mean);
    out.standard_error.push_back(std::sqrt(var / count));
  }
  return out;
}

double row_cdf_distance(const std::vector<SignatureChain>& chains, double kappa,
                        const RowProfile& profile) {
  if (chains.empty()) throw ValidationError("no samples");
  const int row = row_for_kappa(chains.front().levels(), kappa);
  std::vector<double> atoms;
  for (const SignatureChain& c : chains) {
    const CountingMeasure m = counting_measure(c.rows[row - 1]);
    atoms.insert(atoms.end(), m.atoms.begin(), m.atoms.end());
  }
  std::sort(atoms.begin(), atoms.end());
  const double total = static_cast<double>(atoms.size());
  double worst = 0;
  for (size_t i = 0; i < atoms.size(); ++i) {
    if (i + 1 < atoms.size() && atoms[i + 1] == atoms[i]) continue;
    const double f = profile.cumulative(atoms[i]);
    // Empirical CDF jumps at each distinct atom.
    const size_t first = std::lower_bound(atoms.begin(), atoms.end(), atoms[i]) -
                         atoms.begin();
    worst = std::max({worst, std::abs(static_cast<double>(i + 1) / total - f),
                      std::abs(static_cast<double>(first) / total - f)});
  }
  return worst;
}

GueConstants gue_constants(const LatticeSpec& spec, int k, GueCentering centering) {
  spec.validate();
  const int n = spec.levels;
  if (k < 1 || k >= n) throw ValidationError("corner level must lie in [1, N)");
  const CountingMeasure boundary = counting_measure(signature_from_boundary(spec.boundary));
  GueConstants c;
  for (double a : boundary.atoms) {
    c.psi1 += a;
    c.psi2 += a * a;
  }
  c.psi1 /= n;
  c.psi2 /= n;
  double s1 = 0, s2 = 0, frac = 0;
  if (centering == GueCentering::kFiniteN) {
    // Square levels among the N - k bottom ones, each weighted 1/N.
    for (int level = 1; level <= n - k; ++level) {
      if (spec.is_hexagon(level)) continue;
      const double y = spec.lower_weight(level);
      s1 += y / (1 + y);
      s2 += y / ((1 + y) * (1 + y));
    }
    s1 /= n;
    s2 /= n;
    frac = static_cast<double>(n - k) / n;
  } else {
    const int period = spec.period();
    for (int j = 1; j <= period; ++j) {
      if (spec.is_hexagon(j)) continue;
      const double y = spec.lower_weight(j);
      s1 += y / (1 + y);
      s2 += y / ((1 + y) * (1 + y));
    }
    s1 /= period;
    s2 /= period;
    frac = 1;
  }
  c.center = c.psi1 - frac / 2 + s1;
  c.spread = c.psi2 - c.psi1 * c.psi1 - frac / 12 + s2;
  if (!(c.spread > 0)) throw NumericError("non-positive corner variance constant");
  return c;
}

std::vector<int> corner_positions(const SignatureChain& chain, int k) {
  const Signature& s = chain.odd(k);
  std::vector<int> out(k);
  for (int l = 1; l <= k; ++l) out[l - 1] = s[l - 1] + k - l;
  return out;
}

GueReport gue_corner_test(const LatticeSpec& spec,
                          const std::vector<SignatureChain>& chains,
                          const GueOptions& options) {
  const int k = options.k;
  if (static_cast<int>(chains.size()) < options.min_replicas) {
    throw ValidationError("need at least " + std::to_string(options.min_replicas) +
                          " replicas");
  }
  GueReport rep;
  rep.k = k;
  rep.replicas = static_cast<int>(chains.size());
  rep.constants = gue_constants(spec, k, options.centering);
  const double root_n = std::sqrt(static_cast<double>(spec.levels));
  const double scale = options.scale == GueScale::kRootB
                           ? std::sqrt(rep.constants.spread)
                           : rep.constants.spread;
  double offset_sum = 0;
  for (const SignatureChain& c : chains) {
    std::vector<double> v;
    for (int b : corner_positions(c, k)) {
      const double centered = b / root_n - root_n * rep.constants.center;
      offset_sum += centered;
      v.push_back(centered / scale);
    }
    rep.rescaled.push_back(std::move(v));
  }
  const double count = rep.replicas;
  rep.mean_offset = offset_sum / (count * k);
  rep.mean.assign(k, 0);
  rep.covariance.assign(k, std::vector<double>(k, 0));
  for (const auto& v : rep.rescaled) {
    for (int a = 0; a < k; ++a) rep.mean[a] += v[a] / count;
  }
  for (const auto& v : rep.rescaled) {
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) {
        rep.covariance[a][b] +=
            (v[a] - rep.mean[a]) * (v[b] - rep.mean[b]) / (count - 1);
      }
    }
  }
  if (k == 1) {
    std::vector<double> x;
    for (const auto& v : rep.rescaled) x.push_back(v[0]);
    std::sort(x.begin(), x.end());
    const boost::math::normal_distribution<double> normal;
    for (size_t i = 0; i < x.size(); ++i) {
      const double f = boost::math::cdf(normal, x[i]);
      rep.ks_distance = std::max({rep.ks_distance, std::abs((i + 1) / count - f),
                                  std::abs(i / count - f)});
    }
  } else {
    // Gaps of neighbouring coordinates.
    const double g = options.small_gap;
    int small = 0, gaps = 0;
    for (const auto& v : rep.rescaled) {
      for (int a = 0; a + 1 < k; ++a) {
        ++gaps;
        if (v[a] - v[a + 1] < g) ++small;
      }
    }
    rep.small_gap_fraction = static_cast<double>(small) / gaps;
    // Two independent standard normals: the gap is |N(0, 2)|.
    const boost::math::normal_distribution<double> normal;
    rep.small_gap_independent = 2 * boost::math::cdf(normal, g / std::sqrt(2.0)) - 1;
    // GUE_2 with unit diagonal variance: gap / sqrt(2) is chi with 3 degrees.
    const boost::math::chi_squared_distribution<double> chi3(3);
    rep.small_gap_gue = boost::math::cdf(chi3, g * g / 2);
    rep.small_gap_sigma = std::sqrt(rep.small_gap_independent *
                                    (1 - rep.small_gap_independent) / gaps);
    rep.repulsion =
        rep.small_gap_fraction < rep.small_gap_independent - 3 * rep.small_gap_sigma;
  }
  return rep;
}

LlnReport height_lln_test(const LatticeSpec& spec,
                          const std::vector<SignatureChain>& chains,
                          const LimitModel& model, int kappa_rows, int chi_cols) {
  if (chains.empty()) throw ValidationError("no samples");
  if (kappa_rows < 1 || chi_cols < 1) throw ValidationError("empty grid");
  const int n = spec.levels;
  const std::vector<int> width = row_widths(spec);
  std::vector<HeightField> fields;
  for (const SignatureChain& c : chains) fields.push_back(height_from_chain(spec, c));
  LlnReport rep;
  double l1 = 0;
  for (int a = 1; a <= kappa_rows; ++a) {
    // Grid points are snapped to the lattice so the comparison carries no
    // rounding bias: kappa = t / N and chi = i / N.
    const int row = row_for_kappa(n, static_cast<double>(a) / (kappa_rows + 1));
    const double kappa = static_cast<double>(row - 1) / (2 * n);
    const RowProfile profile(model, kappa);
    for (int b = 1; b <= chi_cols; ++b) {
      const int i = static_cast<int>(
          std::lround(static_cast<double>(width[row - 1]) * b / (chi_cols + 1)));
      const double chi = static_cast<double>(i) / n;
      const double limit = limit_height(chi, profile);
      double mean = 0;
      for (const HeightField& h : fields) {
        const double value = h.at(2 * i, row) / static_cast<double>(n);
        const double err = std::abs(value - limit);
        rep.sup_error = std::max(rep.sup_error, err);
        l1 += err;
        mean += value / static_cast<double>(fields.size());
      }
      rep.mean_sup_error = std::max(rep.mean_sup_error, std::abs(mean - limit));
      rep.mean_l1_error += std::abs(mean - limit);
      ++rep.points;
    }
  }
  rep.l1_error = l1 / (static_cast<double>(rep.points) * fields.size());
  rep.mean_l1_error /= rep.points;
  return rep;
}

}  // namespace sqhex
