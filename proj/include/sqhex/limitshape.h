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

// Asymptotics of large contracting square-hexagon lattices: the density of the
// rescaled particle measure on each row, its moments, the limiting height
// function and the frozen boundary.
//
// Positions are rescaled by N (columns) and heights by N (levels); kappa is the
// fraction of levels below a row and x = chi / (1 - kappa) the position in the
// units of that row.

#ifndef SQHEX_LIMITSHAPE_H_
#define SQHEX_LIMITSHAPE_H_

#include <string>
#include <utility>
#include <vector>

#include "sqhex/lattice.h"
#include "sqhex/polynomial.h"

namespace sqhex {

// Limit of the boundary counting measure: either density one on a union of
// intervals of total length one, or uniform on [0, M] (staircase with step M).
struct BoundaryMeasureSpec {
  enum class Kind { kIntervals, kStaircase };
  Kind kind = Kind::kIntervals;
  std::vector<std::pair<double, double>> intervals;
  int step = 1;
  // Off only for plotting J on intervals of arbitrary total length.
  bool unit_mass = true;

  static BoundaryMeasureSpec from_intervals(
      std::vector<std::pair<double, double>> intervals);
  static BoundaryMeasureSpec staircase(int step);

  void validate() const;
  double left_edge() const;
  double right_edge() const;
};

// Weights of one period, in the form the asymptotics need.
struct LimitWeights {
  int period = 1;                 // n
  int hexagon_levels = 0;         // r
  std::vector<double> upper;      // x_1..x_n
  std::vector<double> lower;      // y_i of the square levels of the period
  std::vector<double> gammas;     // distinct values of 1/y, increasing
  std::vector<int> multiplicity;  // of each gamma
};

LimitWeights limit_weights(const LatticeSpec& period_spec);

struct LimitModel {
  BoundaryMeasureSpec boundary;
  LimitWeights weights;

  // Interval boundaries need unit upper weights; the staircase accepts any.
  void validate() const;
};

// Stieltjes transform of the boundary measure, t off its support.
Complex stieltjes_boundary(Complex t, const BoundaryMeasureSpec& spec);

// K + kappa (1/(z-1) + (1/n) sum_j n_j g_j / (z + g_j)) with
// K = x (1 - kappa) - y + kappa r / n.
Complex h_field(Complex z, double x, double y, double kappa,
                const LimitWeights& w);

// Polynomial in z whose roots drive the density at position x of row kappa.
// Interval boundaries: z prod P_b - prod P_a with the trivial root z = 1
// removed. Staircase boundaries: the cleared form of
// kappa U + (1 - kappa) V + W_M = chi.
Poly density_polynomial(double x, double kappa, const LimitModel& model);

struct RootReport {
  std::vector<Complex> roots;
  int conjugate_pairs = 0;
  bool has_upper = false;
  Complex upper_root;  // largest imaginary part, when has_upper
};
RootReport density_roots(double x, double kappa, const LimitModel& model);

// Density along one row. Liquid stretches use the argument of the non-real
// root; a frozen stretch takes the value (0 or 1) its liquid neighbour tends
// to, the leftmost one starts at the left edge of the support and a trailing
// saturated stretch is cut where the mass reaches one.
class RowProfile {
 public:
  RowProfile(const LimitModel& model, double kappa, int grid = 1500);

  double kappa() const { return kappa_; }
  double density(double x) const;
  double cumulative(double x) const;  // mass of (-inf, x]
  double moment(int j) const;
  double mass() const { return cumulative(hi_); }
  const std::vector<std::pair<double, double>>& liquid() const { return liquid_; }
  // True when a frozen stretch got different values from its two sides.
  bool inconsistent() const { return inconsistent_; }

 private:
  struct Segment {
    double lo, hi;
    bool liquid;
    double value;  // frozen value
  };
  double liquid_density(double x, double fallback) const;
  double integrate(int j, double lo, double hi, const Segment& s) const;

  LimitModel model_;
  double kappa_;
  double lo_, hi_;
  std::vector<Segment> segments_;
  std::vector<std::pair<double, double>> liquid_;
  bool inconsistent_ = false;
};

// Density of the measure of row kappa at chi / (1 - kappa).
double density_at(double chi, double kappa, const LimitModel& model);
// Density at a point that is known to be liquid, or -1 if no non-real root.
double liquid_density_at(double x, double kappa, const LimitModel& model);

// j-th moment of the row measure by quadrature of the density.
double moment(double kappa, int j, const LimitModel& model);
// Same through the contour integral around the upper weights (staircase only).
double moment_contour(double kappa, int j, const LimitModel& model);

// 2 kappa - 2 chi + 4 (1 - kappa) * mass of [0, chi / (1 - kappa)].
double limit_height(double chi, double kappa, const LimitModel& model);
double limit_height(double chi, const RowProfile& row);

struct CurveSample {
  double t, chi, kappa;
};

struct TangencyPoint {
  double chi, kappa, t;
  std::string line;  // "kappa=0", "kappa=1", "chi=a", "chi+(r/n)kappa=b"
};

struct FrozenBoundaryCurve {
  std::vector<CurveSample> samples;
  std::vector<TangencyPoint> tangencies;
  int rank = 0;  // class of the curve
  int count(const std::string& line) const;
};

// Interval boundary: chi = t - J/J', kappa = 1/J'.
double j_function(double t, const LimitModel& model);
double j_derivative(double t, const LimitModel& model);
double phi_function(double t, const BoundaryMeasureSpec& spec);
FrozenBoundaryCurve frozen_boundary(const LimitModel& model, int samples = 400);

// Staircase boundary with M = 1 or 2 and arbitrary periodic weights.
FrozenBoundaryCurve frozen_boundary_general(const LimitModel& model,
                                            int samples = 400);

// Points (-1/t, -J(t)/t) of the dual curve.
std::vector<std::pair<double, double>> dual_curve(const FrozenBoundaryCurve& curve,
                                                  const LimitModel& model);
// Parameters t with c - d t = J(t): returns {real roots, total roots}.
std::pair<int, int> dual_line_intersections(double c, double d,
                                            const LimitModel& model);

}  // namespace sqhex

#endif  // SQHEX_LIMITSHAPE_H_
