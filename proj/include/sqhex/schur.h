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

// Schur polynomials, the one-step transition kernels of the dimer measure and
// the Schur-side partition function.

#ifndef SQHEX_SCHUR_H_
#define SQHEX_SCHUR_H_

#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sqhex/lattice.h"
#include "sqhex/signatures.h"

namespace sqhex {

using Rational = boost::multiprecision::cpp_rational;

// s_lambda(u). Sums the branching rule for positive entries when it has few
// intermediate states, then falls back to the ratio of alternants for well
// separated entries and the Jacobi-Trudi determinant otherwise.
double schur_eval(const Signature& lambda, const std::vector<double>& u);
// Branching rule layer by layer; nullopt when a layer grows too large.
std::optional<double> schur_branching_sum(const Signature& lambda, const std::vector<double>& u);
double schur_bialternant(const Signature& lambda, const std::vector<double>& u);
double schur_jacobi_trudi(const Signature& lambda, const std::vector<double>& u);
Rational schur_exact(const Signature& lambda, const std::vector<Rational>& u);
// Complete homogeneous polynomials h_0..h_kmax of u.
std::vector<double> complete_homogeneous(const std::vector<double>& u, int kmax);
// log s_lambda(c, ..., c) with len = lambda.size() equal entries, through the
// product formula; stable for long signatures.
double log_schur_constant(const Signature& lambda, double c);

// s of the staircase ((M-1)(N-1), ..., M-1, 0) at x via the product over
// pairs, with M x^(M-1) for coinciding entries.
double schur_staircase(int m_step, const std::vector<double>& x);
double log_schur_staircase(int m_step, const std::vector<double>& x);

// One-step kernels. beta has the length of the longer signature.
double pr_weight(const Signature& from, const Signature& to,
                 const std::vector<double>& beta);
double st_weight(const Signature& from, const Signature& to,
                 const std::vector<double>& beta);

using Kernel = std::vector<std::pair<Signature, double>>;
// All targets with their probabilities.
Kernel pr_kernel(const Signature& from, const std::vector<double>& beta);
Kernel st_kernel(const Signature& from, const std::vector<double>& beta);
// Targets only.
std::vector<Signature> pr_targets(const Signature& from);
std::vector<Signature> st_targets(const Signature& from);

// Parameter vectors of level i: upper weights of levels i..N, and the same
// scaled by the level's lower weight.
std::vector<double> upper_vector(const LatticeSpec& spec, int level);
std::vector<double> lower_vector(const LatticeSpec& spec, int level);

// Normalising factor of a square level: prod_{t=i}^{N} (1 + y_i x_t).
double gamma_factor(const LatticeSpec& spec, int level);

double partition_function_schur(const LatticeSpec& spec);
double log_partition_function_schur(const LatticeSpec& spec);

// Probability of a signature chain under the Markov description of the
// dimer measure. Zero if the chain is not admissible.
double chain_probability(const LatticeSpec& spec, const SignatureChain& chain);

// Closed-form limit of log(Z_N)/N^2 for the staircase boundary with step M
// and periodic weights.
double free_energy_staircase(int m_step, const LatticeSpec& period_spec);

}  // namespace sqhex

#endif  // SQHEX_SCHUR_H_
