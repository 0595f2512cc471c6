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

#include "sqhex/limitshape.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "sqhex/errors.h"

namespace sqhex {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kImagTol = 1e-12;
constexpr double kKappaSlack = 1e-9;

bool same_value(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

// A rational term num(z) / den(z) with monic den.
struct Term {
  Poly num, den;

  Complex value(Complex z) const { return poly_eval(num, z) / poly_eval(den, z); }
  double value(double z) const { return poly_eval(num, z) / poly_eval(den, z); }
  double derivative(double z) const {
    const double d = poly_eval(den, z);
    return (poly_eval(poly_derivative(num), z) * d -
            poly_eval(num, z) * poly_eval(poly_derivative(den), z)) /
           (d * d);
  }
};

// The three families of the staircase equation kappa U + (1-kappa) V + W = chi.
struct StaircaseTerms {
  std::vector<Term> u, v, w;
};

StaircaseTerms staircase_terms(const LimitModel& model) {
  const LimitWeights& lw = model.weights;
  const double inv_n = 1.0 / lw.period;
  StaircaseTerms out;
  for (size_t j = 0; j < lw.gammas.size(); ++j) {
    out.u.push_back({{0.0, inv_n * lw.multiplicity[j]}, poly_linear(-lw.gammas[j])});
  }
  const int m_step = model.boundary.step;
  for (double x : lw.upper) {
    out.v.push_back({{0.0, inv_n}, poly_linear(x)});
    if (m_step == 1) continue;
    // M z^M / (z^M - x^M) - z / (z - x) = z num / den with
    // den = sum_k z^k x^(M-1-k) and num = (M z^(M-1) - den) / (z - x).
    Poly den(m_step, 0.0);
    for (int k = 0; k < m_step; ++k) den[k] = std::pow(x, m_step - 1 - k);
    Poly top = poly_scale(den, -1.0);
    top[m_step - 1] += m_step;
    Poly num = poly_mul({0.0, inv_n}, poly_deflate(top, x));
    out.w.push_back({num, den});
  }
  return out;
}

double sum_value(const std::vector<Term>& ts, double z) {
  double s = 0;
  for (const Term& t : ts) s += t.value(z);
  return s;
}

Complex sum_value(const std::vector<Term>& ts, Complex z) {
  Complex s = 0;
  for (const Term& t : ts) s += t.value(z);
  return s;
}

double sum_derivative(const std::vector<Term>& ts, double z) {
  double s = 0;
  for (const Term& t : ts) s += t.derivative(z);
  return s;
}

bool same_poly(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!same_value(a[i], b[i])) return false;
  }
  return true;
}

// chi * prod den - sum num_k prod_{l != k} den_l over merged denominators.
Poly clear_denominators(const std::vector<std::pair<double, Term>>& weighted,
                        double chi) {
  std::vector<Term> merged;
  for (const auto& [c, t] : weighted) {
    if (c == 0.0) continue;
    const Poly num = poly_scale(t.num, c);
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const Term& m) { return same_poly(m.den, t.den); });
    if (it == merged.end()) {
      merged.push_back({num, t.den});
    } else {
      it->num = poly_add(it->num, num);
    }
  }
  Poly total{1.0};
  for (const Term& t : merged) total = poly_mul(total, t.den);
  Poly out = poly_scale(total, chi);
  for (size_t k = 0; k < merged.size(); ++k) {
    Poly part = merged[k].num;
    for (size_t l = 0; l < merged.size(); ++l) {
      if (l != k) part = poly_mul(part, merged[l].den);
    }
    out = poly_add(out, poly_scale(part, -1.0));
  }
  return out;
}

// Denominator (z - 1) prod (z + g_j) of h_field and the y-independent part of
// its numerator.
std::pair<Poly, Poly> h_parts(double kappa, const LimitWeights& w) {
  Poly den = poly_linear(1.0);
  for (double g : w.gammas) den = poly_mul(den, poly_linear(-g));
  Poly extra{1.0};
  for (double g : w.gammas) extra = poly_mul(extra, poly_linear(-g));
  for (size_t j = 0; j < w.gammas.size(); ++j) {
    Poly part = poly_linear(1.0);
    for (size_t k = 0; k < w.gammas.size(); ++k) {
      if (k != j) part = poly_mul(part, poly_linear(-w.gammas[k]));
    }
    extra = poly_add(extra, poly_scale(part, w.multiplicity[j] * w.gammas[j] /
                                                 w.period));
  }
  return {den, poly_scale(extra, kappa)};
}

Poly interval_polynomial(double x, double kappa, const LimitModel& model) {
  const LimitWeights& w = model.weights;
  const auto [den, extra] = h_parts(kappa, w);
  const double base = x * (1 - kappa) + kappa * w.hexagon_levels / w.period;
  Poly prod_a{1.0}, prod_b{1.0};
  for (const auto& [a, b] : model.boundary.intervals) {
    prod_a = poly_mul(prod_a, poly_add(poly_scale(den, base - a), extra));
    prod_b = poly_mul(prod_b, poly_add(poly_scale(den, base - b), extra));
  }
  const Poly full = poly_add(poly_mul({0.0, 1.0}, prod_b), poly_scale(prod_a, -1.0));
  return poly_deflate(poly_trim(full), 1.0);
}

Poly staircase_polynomial(double x, double kappa, const LimitModel& model) {
  const StaircaseTerms ts = staircase_terms(model);
  std::vector<std::pair<double, Term>> weighted;
  for (const Term& t : ts.u) weighted.push_back({kappa, t});
  for (const Term& t : ts.v) weighted.push_back({1 - kappa, t});
  for (const Term& t : ts.w) weighted.push_back({1.0, t});
  return clear_denominators(weighted, x * (1 - kappa));
}

void check_kappa(double kappa) {
  if (!(kappa >= 0 && kappa < 1)) {
    throw ValidationError("kappa must lie in [0, 1)");
  }
}

Poly poly_from_roots(const std::vector<double>& roots) {
  Poly p{1.0};
  for (double r : roots) p = poly_mul(p, poly_linear(r));
  return p;
}

std::vector<double> real_roots(const Poly& p) {
  std::vector<double> out;
  for (const Complex& z : poly_roots(p)) {
    if (std::abs(z.imag()) <= 1e-7 * (1 + std::abs(z))) out.push_back(z.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Samples a parametric curve, keeps points with kappa in [0, 1] and refines
// where consecutive kept points are far apart.
template <typename Eval>
std::vector<CurveSample> sample_curve(Eval eval, double center, double scale,
                                      int samples) {
  auto theta_of = [&](double th) { return center + scale * std::tan(th); };
  std::vector<double> thetas;
  const int base = std::max(8, 8 * samples);
  // Irrational offset keeps the grid off poles at simple parameter values.
  const double offset = 0.3819660112501051;
  for (int k = 0; k < base; ++k) thetas.push_back(-kPi / 2 + kPi * (k + offset) / base);
  auto keep = [](const CurveSample& s) {
    return std::isfinite(s.chi) && std::isfinite(s.kappa) &&
           s.kappa >= -kKappaSlack && s.kappa <= 1 + kKappaSlack;
  };
  std::vector<std::pair<double, CurveSample>> pts;
  for (double th : thetas) pts.push_back({th, eval(theta_of(th))});
  const double gap = 4.0 / samples;
  for (int round = 0; round < 8; ++round) {
    std::vector<std::pair<double, CurveSample>> next;
    bool refined = false;
    for (size_t i = 0; i < pts.size(); ++i) {
      next.push_back(pts[i]);
      if (i + 1 == pts.size()) break;
      const CurveSample& p = pts[i].second;
      const CurveSample& q = pts[i + 1].second;
      if (keep(p) && keep(q) && std::hypot(p.chi - q.chi, p.kappa - q.kappa) > gap) {
        const double th = 0.5 * (pts[i].first + pts[i + 1].first);
        next.push_back({th, eval(theta_of(th))});
        refined = true;
      }
    }
    pts.swap(next);
    if (!refined) break;
  }
  std::vector<CurveSample> out;
  for (const auto& [th, s] : pts) {
    if (keep(s)) out.push_back(s);
  }
  return out;
}

}  // namespace

BoundaryMeasureSpec BoundaryMeasureSpec::from_intervals(
    std::vector<std::pair<double, double>> intervals) {
  BoundaryMeasureSpec s;
  s.kind = Kind::kIntervals;
  s.intervals = std::move(intervals);
  return s;
}

BoundaryMeasureSpec BoundaryMeasureSpec::staircase(int step) {
  BoundaryMeasureSpec s;
  s.kind = Kind::kStaircase;
  s.step = step;
  return s;
}

void BoundaryMeasureSpec::validate() const {
  if (kind == Kind::kStaircase) {
    if (step < 1) throw ValidationError("staircase step must be at least 1");
    return;
  }
  if (intervals.empty()) throw ValidationError("at least one interval required");
  double total = 0, prev = -INFINITY;
  for (const auto& [a, b] : intervals) {
    if (!(a > prev) || !(b > a)) {
      throw ValidationError("intervals must satisfy a_1 < b_1 < a_2 < ...");
    }
    total += b - a;
    prev = b;
  }
  if (unit_mass && std::abs(total - 1.0) > 1e-9) {
    throw ValidationError("interval lengths must add up to 1");
  }
}

double BoundaryMeasureSpec::left_edge() const {
  return kind == Kind::kStaircase ? 0.0 : intervals.front().first;
}

double BoundaryMeasureSpec::right_edge() const {
  return kind == Kind::kStaircase ? static_cast<double>(step)
                                  : intervals.back().second;
}

LimitWeights limit_weights(const LatticeSpec& period_spec) {
  LimitWeights w;
  w.period = period_spec.period();
  if (w.period < 1) throw ValidationError("empty period");
  if (static_cast<int>(period_spec.weights.ne_upper.size()) != w.period) {
    throw ValidationError("one upper weight per level of the period required");
  }
  w.upper = period_spec.weights.ne_upper;
  for (int i = 1; i <= w.period; ++i) {
    if (period_spec.pattern[i - 1] == 1) {
      ++w.hexagon_levels;
      continue;
    }
    auto it = period_spec.weights.ne_lower.find(i);
    if (it == period_spec.weights.ne_lower.end() || !(it->second > 0)) {
      throw ValidationError("missing lower weight for a square level");
    }
    w.lower.push_back(it->second);
  }
  for (double x : w.upper) {
    if (!(x > 0)) throw ValidationError("weights must be positive");
  }
  std::vector<double> cs;
  for (double y : w.lower) cs.push_back(1.0 / y);
  std::sort(cs.begin(), cs.end());
  for (double c : cs) {
    if (!w.gammas.empty() && same_value(w.gammas.back(), c)) {
      ++w.multiplicity.back();
    } else {
      w.gammas.push_back(c);
      w.multiplicity.push_back(1);
    }
  }
  return w;
}

void LimitModel::validate() const {
  boundary.validate();
  if (weights.period < 1 ||
      static_cast<int>(weights.upper.size()) != weights.period) {
    throw ValidationError("malformed limit weights");
  }
  if (boundary.kind == BoundaryMeasureSpec::Kind::kIntervals) {
    for (double x : weights.upper) {
      if (!same_value(x, 1.0)) {
        throw ValidationError(
            "interval boundaries need unit upper weights; use a staircase boundary");
      }
    }
  }
}

Complex stieltjes_boundary(Complex t, const BoundaryMeasureSpec& spec) {
  spec.validate();
  const bool on_axis = std::abs(t.imag()) == 0.0;
  if (spec.kind == BoundaryMeasureSpec::Kind::kStaircase) {
    const double m = spec.step;
    if (on_axis && t.real() >= 0 && t.real() <= m) {
      throw ValidationError("Stieltjes transform evaluated on the support");
    }
    return (std::log(t) - std::log(t - m)) / m;
  }
  Complex s = 0;
  for (const auto& [a, b] : spec.intervals) {
    if (on_axis && t.real() >= a && t.real() <= b) {
      throw ValidationError("Stieltjes transform evaluated on the support");
    }
    s += std::log(t - a) - std::log(t - b);
  }
  return s;
}

Complex h_field(Complex z, double x, double y, double kappa,
                const LimitWeights& w) {
  if (std::abs(z - 1.0) == 0.0) throw ValidationError("pole of H at z = 1");
  Complex sum = 1.0 / (z - 1.0);
  for (size_t j = 0; j < w.gammas.size(); ++j) {
    if (std::abs(z + w.gammas[j]) == 0.0) throw ValidationError("pole of H");
    sum += static_cast<double>(w.multiplicity[j]) * w.gammas[j] / (static_cast<double>(w.period) * (z + w.gammas[j]));
  }
  const double k = x * (1 - kappa) - y + kappa * w.hexagon_levels / w.period;
  return k + kappa * sum;
}

Poly density_polynomial(double x, double kappa, const LimitModel& model) {
  check_kappa(kappa);
  return model.boundary.kind == BoundaryMeasureSpec::Kind::kIntervals
             ? interval_polynomial(x, kappa, model)
             : staircase_polynomial(x, kappa, model);
}

RootReport density_roots(double x, double kappa, const LimitModel& model) {
  RootReport r;
  r.roots = poly_roots(density_polynomial(x, kappa, model));
  for (const Complex& z : r.roots) {
    if (z.imag() > kImagTol * (1 + std::abs(z))) {
      ++r.conjugate_pairs;
      if (!r.has_upper || z.imag() > r.upper_root.imag()) r.upper_root = z;
      r.has_upper = true;
    }
  }
  return r;
}

double liquid_density_at(double x, double kappa, const LimitModel& model) {
  const RootReport r = density_roots(x, kappa, model);
  if (!r.has_upper) return -1.0;
  if (r.conjugate_pairs > 1) {
    if (model.boundary.kind == BoundaryMeasureSpec::Kind::kIntervals ||
        model.boundary.step <= 2) {
      throw NumericError("more than one pair of non-real roots");
    }
    return std::nan("");  // ambiguous for larger steps
  }
  return std::arg(r.upper_root) / kPi;
}

RowProfile::RowProfile(const LimitModel& model, double kappa, int grid)
    : model_(model), kappa_(kappa) {
  model.validate();
  check_kappa(kappa);
  if (grid < 4) throw ValidationError("row grid needs at least 4 points");
  const LimitWeights& w = model.weights;
  const double hex_share = static_cast<double>(w.hexagon_levels) / w.period;
  lo_ = model.boundary.left_edge() / (1 - kappa);
  hi_ = (model.boundary.right_edge() - kappa * hex_share) / (1 - kappa);
  hi_ = std::max(hi_, lo_ + 1.0);

  auto is_liquid = [&](double x) { return density_roots(x, kappa, model).has_upper; };
  std::vector<double> xs(grid);
  std::vector<char> liquid(grid);
  for (int k = 0; k < grid; ++k) {
    xs[k] = lo_ + (hi_ - lo_) * (k + 0.5) / grid;
    liquid[k] = is_liquid(xs[k]);
  }
  // Runs with bisected end points; liquid_side keeps a point just inside
  // each liquid run next to every transition.
  struct Run {
    double lo, hi;
    bool liquid;
    double inner_lo, inner_hi;
  };
  std::vector<Run> runs;
  double start = lo_, inner_start = xs[0];
  for (int k = 0; k < grid; ++k) {
    if (k + 1 < grid && liquid[k + 1] == liquid[k]) continue;
    double end = hi_, inner_end = xs[k];
    if (k + 1 < grid) {
      double a = xs[k], b = xs[k + 1];
      for (int it = 0; it < 50; ++it) {
        const double mid = 0.5 * (a + b);
        (is_liquid(mid) == static_cast<bool>(liquid[k]) ? a : b) = mid;
      }
      end = 0.5 * (a + b);
      inner_end = a;
      runs.push_back({start, end, static_cast<bool>(liquid[k]), inner_start, inner_end});
      start = end;
      inner_start = b;
    } else {
      runs.push_back({start, end, static_cast<bool>(liquid[k]), inner_start, inner_end});
    }
  }

  const bool any_liquid =
      std::any_of(runs.begin(), runs.end(), [](const Run& r) { return r.liquid; });
  if (!any_liquid) {
    // Fully frozen row: the particles are packed against the left edge.
    segments_.push_back({lo_, lo_ + 1.0, false, 1.0});
    hi_ = lo_ + 1.0;
    return;
  }
  auto limit_value = [&](double x) {
    const double d = liquid_density_at(x, kappa, model);
    return d >= 0.5 ? 1.0 : 0.0;
  };
  // Two readings of the frozen phases. The first takes each frozen stretch
  // from the limit of the neighbouring liquid density. The second lets the
  // phase flip inside a stretch whenever a real root crosses 0 or infinity,
  // i.e. with the parity of the number of negative roots, which catches a
  // packed block next to a hole. Spurious crossings of roots away from the
  // merging pair also flip the parity, so the reading whose mass can reach
  // one wins, the first on a tie.
  auto negative_parity = [&](double x) {
    int negative = 0;
    for (const Complex& z : density_roots(x, kappa, model).roots) {
      if (std::abs(z.imag()) <= kImagTol * (1 + std::abs(z)) && z.real() < 0) ++negative;
    }
    return negative % 2;
  };
  auto frozen_pieces = [&](const Run& r, double seed_x, double seed_value, bool split,
                           std::vector<Segment>& out) {
    if (!split) {
      out.push_back({r.lo, r.hi, false, seed_value});
      return;
    }
    const int seed_parity = negative_parity(seed_x);
    auto value_at = [&](double x) {
      return negative_parity(x) == seed_parity ? seed_value : 1.0 - seed_value;
    };
    double start = r.lo, current = value_at(r.inner_lo), prev_x = r.inner_lo;
    std::vector<double> probes;
    for (double x : xs) {
      if (x > r.inner_lo && x < r.inner_hi) probes.push_back(x);
    }
    probes.push_back(r.inner_hi);
    for (double x : probes) {
      const double v = value_at(x);
      if (v != current) {
        double a = prev_x, b = x;
        for (int it = 0; it < 50; ++it) {
          const double mid = 0.5 * (a + b);
          (value_at(mid) == current ? a : b) = mid;
        }
        const double cut = 0.5 * (a + b);
        out.push_back({start, cut, false, current});
        start = cut;
        current = v;
      }
      prev_x = x;
    }
    out.push_back({start, r.hi, false, current});
  };
  auto reading = [&](bool split, bool& inconsistent) {
    std::vector<Segment> out;
    inconsistent = false;
    for (size_t i = 0; i < runs.size(); ++i) {
      const Run& r = runs[i];
      if (r.liquid) {
        out.push_back({r.lo, r.hi, true, 0.0});
        continue;
      }
      const bool has_left = i > 0, has_right = i + 1 < runs.size();
      if (has_left) {
        frozen_pieces(r, r.inner_lo, limit_value(runs[i - 1].inner_hi), split, out);
        if (has_right && out.back().value != limit_value(runs[i + 1].inner_lo)) {
          inconsistent = true;
        }
      } else {
        frozen_pieces(r, r.inner_hi, limit_value(runs[i + 1].inner_lo), split, out);
      }
    }
    return out;
  };
  // Distance from one to the masses reachable by trimming a saturated
  // trailing stretch.
  auto mass_miss = [&](const std::vector<Segment>& candidate) {
    segments_ = candidate;
    const double total = cumulative(hi_);
    const Segment& last = candidate.back();
    const double least = !last.liquid && last.value == 1.0 ? cumulative(last.lo) : total;
    if (1.0 < least) return least - 1.0;
    if (1.0 > total) return 1.0 - total;
    return 0.0;
  };
  bool plain_inconsistent = false, split_inconsistent = false;
  const std::vector<Segment> plain = reading(false, plain_inconsistent);
  const std::vector<Segment> split = reading(true, split_inconsistent);
  const double plain_miss = mass_miss(plain);
  const double split_miss = mass_miss(split);
  const bool use_split = split_miss + 1e-6 < plain_miss;
  segments_ = use_split ? split : plain;
  inconsistent_ = use_split ? split_inconsistent : plain_inconsistent;
  for (const Segment& seg : segments_) {
    if (seg.liquid) liquid_.push_back({seg.lo, seg.hi});
  }

  // A saturated trailing stretch stops once the mass reaches one.
  Segment& last = segments_.back();
  if (!last.liquid && last.value == 1.0) {
    const double before = cumulative(last.lo);
    last.hi = std::min(last.hi, last.lo + std::max(0.0, 1.0 - before));
    hi_ = last.hi;
  }
}

double RowProfile::liquid_density(double x, double fallback) const {
  const double d = liquid_density_at(x, kappa_, model_);
  return d < 0 ? fallback : d;
}

double RowProfile::density(double x) const {
  if (x < lo_ || x > hi_) return 0.0;
  for (size_t i = 0; i < segments_.size(); ++i) {
    const Segment& s = segments_[i];
    if (x < s.lo || x > s.hi) continue;
    if (!s.liquid) return s.value;
    // Numerically real roots right at the edge of a liquid stretch: use the
    // frozen value on the nearer side.
    const bool near_left = x - s.lo < s.hi - x;
    double fallback = 0;
    if (near_left && i > 0) fallback = segments_[i - 1].value;
    if (!near_left && i + 1 < segments_.size()) fallback = segments_[i + 1].value;
    return liquid_density(x, fallback);
  }
  return 0.0;
}

double RowProfile::integrate(int j, double lo, double hi, const Segment& s) const {
  if (hi <= lo) return 0.0;
  if (!s.liquid) {
    return s.value * (std::pow(hi, j + 1) - std::pow(lo, j + 1)) / (j + 1);
  }
  auto f = [&](double x) {
    const double d = density(x);
    return std::pow(x, j) * (std::isfinite(d) ? d : 0.0);
  };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 12,
                                                                       1e-10);
}

double RowProfile::cumulative(double x) const {
  double total = 0;
  for (const Segment& s : segments_) {
    if (x <= s.lo) break;
    total += integrate(0, s.lo, std::min(x, s.hi), s);
  }
  return total;
}

double RowProfile::moment(int j) const {
  if (j < 0) throw ValidationError("moment order must be non-negative");
  double total = 0;
  for (const Segment& s : segments_) total += integrate(j, s.lo, s.hi, s);
  return total;
}

double density_at(double chi, double kappa, const LimitModel& model) {
  model.validate();
  check_kappa(kappa);
  const double x = chi / (1 - kappa);
  const double direct = liquid_density_at(x, kappa, model);
  if (direct >= 0 || std::isnan(direct)) return direct;
  return RowProfile(model, kappa).density(x);
}

double moment(double kappa, int j, const LimitModel& model) {
  return RowProfile(model, kappa).moment(j);
}

double moment_contour(double kappa, int j, const LimitModel& model) {
  model.validate();
  check_kappa(kappa);
  if (model.boundary.kind != BoundaryMeasureSpec::Kind::kStaircase) {
    throw ValidationError("contour moments are implemented for staircase boundaries");
  }
  const StaircaseTerms ts = staircase_terms(model);
  auto f = [&](Complex z) {
    return (kappa * sum_value(ts.u, z) + (1 - kappa) * sum_value(ts.v, z) +
            sum_value(ts.w, z)) /
           (1 - kappa);
  };
  // Singularities other than the upper weights.
  std::vector<Complex> others{Complex(0.0, 0.0)};
  for (double g : model.weights.gammas) others.push_back(-g);
  for (const Term& t : ts.w) {
    for (const Complex& z : poly_roots(t.den)) others.push_back(z);
  }
  std::vector<double> centers;
  for (double x : model.weights.upper) {
    if (std::none_of(centers.begin(), centers.end(),
                     [&](double c) { return same_value(c, x); })) {
      centers.push_back(x);
    }
  }
  const int points = 2048;
  Complex total = 0;
  for (double c : centers) {
    double dist = INFINITY;
    for (const Complex& z : others) dist = std::min(dist, std::abs(z - c));
    for (double d : centers) {
      if (d != c) dist = std::min(dist, std::abs(d - c));
    }
    const double rho = 0.5 * dist;
    Complex sum = 0;
    for (int k = 0; k < points; ++k) {
      const Complex e = std::polar(1.0, 2 * kPi * k / points);
      const Complex z = c + rho * e;
      sum += std::pow(f(z), j + 1) / z * (Complex(0, 1) * rho * e);
    }
    total += sum * (2 * kPi / points);
  }
  return (total / (Complex(0, 2 * kPi) * static_cast<double>(j + 1))).real();
}

double limit_height(double chi, const RowProfile& row) {
  const double kappa = row.kappa();
  return 2 * kappa - 2 * chi + 4 * (1 - kappa) * row.cumulative(chi / (1 - kappa));
}

double limit_height(double chi, double kappa, const LimitModel& model) {
  return limit_height(chi, RowProfile(model, kappa));
}

int FrozenBoundaryCurve::count(const std::string& line) const {
  return static_cast<int>(std::count_if(tangencies.begin(), tangencies.end(),
                                        [&](const TangencyPoint& p) { return p.line == line; }));
}

double phi_function(double t, const BoundaryMeasureSpec& spec) {
  double v = 1;
  for (const auto& [a, b] : spec.intervals) v *= (t - a) / (t - b);
  return v;
}

namespace {

struct PhiPolys {
  Poly a, b;  // prod (t - a_i), prod (t - b_i)
};

PhiPolys phi_polys(const BoundaryMeasureSpec& spec) {
  std::vector<double> as, bs;
  for (const auto& [a, b] : spec.intervals) {
    as.push_back(a);
    bs.push_back(b);
  }
  return {poly_from_roots(as), poly_from_roots(bs)};
}

double phi_derivative(double t, const PhiPolys& p) {
  const double bv = poly_eval(p.b, t);
  return (poly_eval(poly_derivative(p.a), t) * bv -
          poly_eval(p.a, t) * poly_eval(poly_derivative(p.b), t)) /
         (bv * bv);
}

void check_interval_model(const LimitModel& model) {
  if (model.boundary.kind != BoundaryMeasureSpec::Kind::kIntervals) {
    throw ValidationError("this curve needs an interval boundary");
  }
}

}  // namespace

double j_function(double t, const LimitModel& model) {
  check_interval_model(model);
  const LimitWeights& w = model.weights;
  const double phi = phi_function(t, model.boundary);
  double j = static_cast<double>(w.hexagon_levels) / w.period + 1.0 / (phi - 1.0);
  for (size_t k = 0; k < w.gammas.size(); ++k) {
    j += w.multiplicity[k] * w.gammas[k] / (w.period * (phi + w.gammas[k]));
  }
  return j;
}

double j_derivative(double t, const LimitModel& model) {
  check_interval_model(model);
  const LimitWeights& w = model.weights;
  const double phi = phi_function(t, model.boundary);
  double bracket = -1.0 / ((phi - 1.0) * (phi - 1.0));
  for (size_t k = 0; k < w.gammas.size(); ++k) {
    const double d = phi + w.gammas[k];
    bracket -= w.multiplicity[k] * w.gammas[k] / (w.period * d * d);
  }
  return phi_derivative(t, phi_polys(model.boundary)) * bracket;
}

FrozenBoundaryCurve frozen_boundary(const LimitModel& model, int samples) {
  model.validate();
  check_interval_model(model);
  if (samples < 4) throw ValidationError("at least 4 curve samples required");
  const LimitWeights& w = model.weights;
  const auto& iv = model.boundary.intervals;
  const double hex_share = static_cast<double>(w.hexagon_levels) / w.period;
  const int s = static_cast<int>(iv.size());
  const int m = static_cast<int>(w.gammas.size());

  FrozenBoundaryCurve curve;
  curve.rank = (m + 1) * s;
  auto eval = [&](double t) {
    const double jd = j_derivative(t, model);
    const double kappa = 1.0 / jd;
    return CurveSample{t, t - j_function(t, model) * kappa, kappa};
  };
  const double lo = iv.front().first, hi = iv.back().second;
  curve.samples = sample_curve(eval, 0.5 * (lo + hi), hi - lo, samples);

  const PhiPolys pp = phi_polys(model.boundary);
  double weighted_gamma = 0, gamma_ratio = 0, inv_gamma = 0;
  for (int k = 0; k < m; ++k) {
    weighted_gamma += w.multiplicity[k] * w.gammas[k] / w.period;
    gamma_ratio += w.multiplicity[k] * w.gammas[k] / (w.period * (1 + w.gammas[k]));
    inv_gamma += w.multiplicity[k] / (w.period * w.gammas[k]);
  }
  for (int i = 0; i < s; ++i) {
    const double a = iv[i].first, b = iv[i].second;
    // t = a_i: Phi vanishes and J(a_i) = 0.
    const double jd_a = phi_derivative(a, pp) * (-1.0 - inv_gamma);
    curve.tangencies.push_back({a, 1.0 / jd_a, a, "chi=a"});
    // t = b_i: Phi has a pole with residue res and J' -> (1 + sum) / res.
    double res = poly_eval(pp.a, b);
    for (int k = 0; k < s; ++k) {
      if (k != i) res /= b - iv[k].second;
    }
    const double kappa_b = res / (1 + weighted_gamma);
    curve.tangencies.push_back({b - hex_share * kappa_b, kappa_b, b, "chi+(r/n)kappa=b"});
  }
  // t -> infinity: Phi - 1 = 1/t + (p2 + 1/2)/t^2 + ..., with
  // p2 = sum (b^2 - a^2) / 2.
  double p2 = 0;
  for (const auto& [a, b] : iv) p2 += 0.5 * (b * b - a * a);
  curve.tangencies.push_back(
      {p2 + 0.5 - hex_share - gamma_ratio, 1.0, INFINITY, "kappa=1"});
  // Bottom tangencies: Phi = 1 or Phi = -gamma_j.
  std::vector<double> bottom = real_roots(poly_add(pp.a, poly_scale(pp.b, -1.0)));
  for (double g : w.gammas) {
    for (double t : real_roots(poly_add(pp.a, poly_scale(pp.b, g)))) bottom.push_back(t);
  }
  std::sort(bottom.begin(), bottom.end());
  double prev = -INFINITY;
  for (double t : bottom) {
    if (std::isfinite(prev) && same_value(t, prev)) continue;
    curve.tangencies.push_back({t, 0.0, t, "kappa=0"});
    prev = t;
  }
  return curve;
}

FrozenBoundaryCurve frozen_boundary_general(const LimitModel& model, int samples) {
  model.validate();
  if (model.boundary.kind != BoundaryMeasureSpec::Kind::kStaircase ||
      model.boundary.step > 2) {
    throw ValidationError(
        "the general parametrization needs a staircase boundary with step 1 or 2");
  }
  if (samples < 4) throw ValidationError("at least 4 curve samples required");
  const StaircaseTerms ts = staircase_terms(model);
  FrozenBoundaryCurve curve;
  curve.rank = static_cast<int>(
      poly_trim(staircase_polynomial(0.37, 0.41, model)).size()) - 1;
  auto eval = [&](double z) {
    const double du = sum_derivative(ts.u, z), dv = sum_derivative(ts.v, z),
                 dw = sum_derivative(ts.w, z);
    const double u = sum_value(ts.u, z), v = sum_value(ts.v, z), wv = sum_value(ts.w, z);
    const double kappa = (dv + dw) / (dv - du);
    return CurveSample{z, kappa * (u - v) + v + wv, kappa};
  };
  double scale = 1;
  for (double x : model.weights.upper) scale = std::max(scale, x);
  for (double g : model.weights.gammas) scale = std::max(scale, g);
  curve.samples = sample_curve(eval, 0.0, scale, samples);

  for (double g : model.weights.gammas) {
    const double z = -g;
    const double chi = sum_value(ts.v, z) + sum_value(ts.w, z);
    if (std::isfinite(chi)) curve.tangencies.push_back({chi, 0.0, z, "kappa=0"});
  }
  std::vector<double> seen;
  for (double x : model.weights.upper) {
    if (std::any_of(seen.begin(), seen.end(), [&](double y) { return same_value(x, y); })) {
      continue;
    }
    seen.push_back(x);
    curve.tangencies.push_back({sum_value(ts.u, x) + sum_value(ts.w, x), 1.0, x, "kappa=1"});
  }
  return curve;
}

std::vector<std::pair<double, double>> dual_curve(const FrozenBoundaryCurve& curve,
                                                  const LimitModel& model) {
  std::vector<std::pair<double, double>> out;
  for (const CurveSample& s : curve.samples) {
    if (s.t == 0 || !std::isfinite(s.t)) continue;
    out.push_back({-1.0 / s.t, -j_function(s.t, model) / s.t});
  }
  return out;
}

std::pair<int, int> dual_line_intersections(double c, double d,
                                            const LimitModel& model) {
  model.validate();
  check_interval_model(model);
  const LimitWeights& w = model.weights;
  const PhiPolys pp = phi_polys(model.boundary);
  const Poly diff = poly_add(pp.a, poly_scale(pp.b, -1.0));
  std::vector<Poly> shifted;
  for (double g : w.gammas) shifted.push_back(poly_add(pp.a, poly_scale(pp.b, g)));
  Poly den = diff;
  for (const Poly& p : shifted) den = poly_mul(den, p);
  // J = r/n + B / (A - B) + (1/n) sum n_j g_j B / (A + g_j B).
  Poly num = pp.b;
  for (const Poly& p : shifted) num = poly_mul(num, p);
  for (size_t j = 0; j < shifted.size(); ++j) {
    Poly part = poly_mul(pp.b, diff);
    for (size_t k = 0; k < shifted.size(); ++k) {
      if (k != j) part = poly_mul(part, shifted[k]);
    }
    num = poly_add(num, poly_scale(part, w.multiplicity[j] * w.gammas[j] / w.period));
  }
  const double hex_share = static_cast<double>(w.hexagon_levels) / w.period;
  const Poly lhs = poly_mul({c - hex_share, -d}, den);
  const Poly eq = poly_trim(poly_add(lhs, poly_scale(num, -1.0)));
  const auto roots = poly_roots(eq);
  int real = 0;
  for (const Complex& z : roots) {
    if (std::abs(z.imag()) <= 1e-7 * (1 + std::abs(z))) ++real;
  }
  return {real, static_cast<int>(roots.size())};
}

}  // namespace sqhex
