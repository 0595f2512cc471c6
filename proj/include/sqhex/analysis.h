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

// Statistics over sampled matchings: height fields, row measures and their
// moments, corner fluctuations near the top and the height law of large numbers.
//
// Height points use doubled coordinates (X, Y): a lattice vertex of row r and
// doubled abscissa x2 sits at (x2, r), and heights live on the points with
// X + Y odd. The point (0, 1) carries height 0.

#ifndef SQHEX_ANALYSIS_H_
#define SQHEX_ANALYSIS_H_

#include <map>
#include <utility>
#include <vector>

#include "sqhex/lattice.h"
#include "sqhex/limitshape.h"
#include "sqhex/signatures.h"

namespace sqhex {

struct HeightField {
  std::map<std::pair<int, int>, int> values;

  bool has(int x, int y) const { return values.count({x, y}) > 0; }
  int at(int x, int y) const;  // throws ValidationError when absent
};

// Height on the odd rows from the particle counts of each row:
// h(2i, r) = (r - 1) + 4 #{particles among the first i cells} - 2i.
HeightField height_from_chain(const LatticeSpec& spec, const SignatureChain& chain);

// Height everywhere by walking the local rules (crossing a free edge changes h
// by +-1, crossing a dimer by -+3), checked for path independence and against
// the row formula. Throws NumericError on any disagreement.
HeightField height_field(const Graph& g, const Matching& m);

// Odd row carrying the level fraction kappa: 2 floor(kappa N) + 1.
int row_for_kappa(int levels, double kappa);

CountingMeasure empirical_row_measure(const SignatureChain& chain, int row);
// j-th moment of the counting measure of a signature.
double signature_moment(const Signature& s, int j);

struct RowMomentReport {
  double kappa = 0;
  int row = 0;
  std::vector<double> empirical;  // moments 1..J averaged over the chains
  std::vector<double> standard_error;
};
RowMomentReport row_moments(const std::vector<SignatureChain>& chains,
                            double kappa, int max_moment);

// Sup distance between the averaged empirical CDF of row kappa and the CDF of
// the limiting density.
double row_cdf_distance(const std::vector<SignatureChain>& chains, double kappa,
                        const RowProfile& profile);

enum class GueCentering { kFiniteN, kLimit };
enum class GueScale { kRootB, kPlainB };

struct GueOptions {
  int k = 1;
  GueCentering centering = GueCentering::kFiniteN;
  GueScale scale = GueScale::kRootB;
  double small_gap = 0.5;  // threshold for the level repulsion check (k >= 2)
  int min_replicas = 100;
};

struct GueConstants {
  double psi1 = 0, psi2 = 0;  // moments of the boundary counting measure
  double center = 0;          // A
  double spread = 0;          // B
};
GueConstants gue_constants(const LatticeSpec& spec, int k, GueCentering centering);

// Positions lambda_l + k - l (l = 1..k) of the length-k row.
std::vector<int> corner_positions(const SignatureChain& chain, int k);

struct GueReport {
  int k = 0;
  int replicas = 0;
  GueConstants constants;
  std::vector<std::vector<double>> rescaled;  // per replica, decreasing
  std::vector<double> mean;
  std::vector<std::vector<double>> covariance;
  double mean_offset = 0;  // average of b / sqrt(N) - sqrt(N) A over coordinates
  // k = 1: Kolmogorov-Smirnov distance to the standard normal.
  double ks_distance = 0;
  // k >= 2: fraction of adjacent gaps below small_gap, with the GUE value and
  // the value for independent standard normals.
  double small_gap_fraction = 0;
  double small_gap_gue = 0;
  double small_gap_independent = 0;
  double small_gap_sigma = 0;  // binomial error of the independent value
  bool repulsion = false;      // below the independent value by 3 sigma
};

GueReport gue_corner_test(const LatticeSpec& spec,
                          const std::vector<SignatureChain>& chains,
                          const GueOptions& options);

struct LlnReport {
  double sup_error = 0;       // worst single chain
  double l1_error = 0;        // mean absolute error over grid points and chains
  double mean_sup_error = 0;  // of the height averaged over the chains
  double mean_l1_error = 0;
  int points = 0;             // grid points
};

// Compares h(2i, 2t + 1) / N with the limit height at (i / N, t / N) on an
// interior grid of kappa_rows x chi_cols lattice points.
LlnReport height_lln_test(const LatticeSpec& spec,
                          const std::vector<SignatureChain>& chains,
                          const LimitModel& model, int kappa_rows, int chi_cols);

}  // namespace sqhex

#endif  // SQHEX_ANALYSIS_H_
