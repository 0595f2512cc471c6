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

// Signatures (nonincreasing integer tuples), Maya diagrams and the bijection
// between perfect matchings and interlacing sequences of signatures.

#ifndef SQHEX_SIGNATURES_H_
#define SQHEX_SIGNATURES_H_

#include <vector>

#include "sqhex/lattice.h"

namespace sqhex {

using Signature = std::vector<int>;
using Matching = std::vector<int>;  // sorted edge ids

int size_of(const Signature& s);
bool is_signature(const Signature& s);

// True when small is obtained from big by removing a horizontal strip:
// big_1 >= small_1 >= big_2 >= small_2 >= ... Lengths must be equal or
// differ by one (small shorter); anything else throws ValidationError.
bool interlaces(const Signature& small, const Signature& big);
// True when big is obtained from small by adding a vertical strip:
// same length and 0 <= big_i - small_i <= 1.
bool cointerlaces(const Signature& small, const Signature& big);

// Boundary signature: omega_k = boundary[N-k] - (N-k) (1-based boundary).
Signature signature_from_boundary(const std::vector<int>& boundary);

// Maya diagram: true marks a particle (vertical step of the Young path).
using MayaDiagram = std::vector<bool>;
MayaDiagram signature_to_maya(const Signature& s, int max_part);
Signature maya_to_signature(const MayaDiagram& maya);
// Cut position where #particles on the left equals #holes on the right.
int maya_origin(const MayaDiagram& maya);

// Signatures read off the rows of a matching, indexed by row (1..2N+1).
//   row 1       : boundary signature
//   row 2i      : the signature of length N-i+1 after the square half-step
//   row 2i+1    : the signature of length N-i
struct SignatureChain {
  std::vector<Signature> rows;  // rows[r-1]

  int levels() const { return (static_cast<int>(rows.size()) - 1) / 2; }
  // Signature of length len sitting on an odd row (len = 0..N).
  const Signature& odd(int len) const;
  // Signature of length len sitting on an even row (len = 1..N).
  const Signature& even(int len) const;
};

// Row holding the odd / even signature of a given length.
int row_of_odd(int levels, int len);
int row_of_even(int levels, int len);

// Maya diagram of each row: a white vertex matched upward or a black vertex
// matched downward is a particle. Virtual boundary cells are holes.
std::vector<MayaDiagram> matching_to_maya(const Graph& g, const Matching& m);
SignatureChain matching_to_chain(const Graph& g, const Matching& m);
Matching chain_to_matching(const Graph& g, const SignatureChain& chain);

// Throws ValidationError unless m is a perfect matching of g.
void check_perfect(const Graph& g, const Matching& m);

// Throws ValidationError unless the chain has the right lengths, starts at the
// boundary signature, ends at the empty signature and (co)interlaces, with
// equal neighbours across hexagon levels.
void check_chain(const LatticeSpec& spec, const SignatureChain& chain);

struct CountingMeasure {
  std::vector<double> atoms;  // decreasing, each of mass 1/len
};
CountingMeasure counting_measure(const Signature& s);

// NE-SW edge counts in a matching: lower[i-1] between rows 2i-1 and 2i,
// upper[i-1] between rows 2i and 2i+1.
struct NeSwCounts {
  std::vector<int> lower, upper;
  int total() const;
  // Upper minus lower edges; always |omega|. Equals total() without square
  // levels.
  int signed_total() const;
};
NeSwCounts count_ne_sw(const Graph& g, const Matching& m);

double matching_weight(const Graph& g, const Matching& m);

}  // namespace sqhex

#endif  // SQHEX_SIGNATURES_H_
