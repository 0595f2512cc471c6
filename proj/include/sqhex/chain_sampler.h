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

// Exact sampling of the signature chain level by level, bottom to top.
//
// When all variables of a step are equal the step is sampled in O(L^2)
// (horizontal strips) or O(L^3) (vertical strips) without evaluating any
// Schur polynomial, which keeps N in the hundreds practical. Otherwise the
// step kernel is enumerated, which only works for small signatures.

#ifndef SQHEX_CHAIN_SAMPLER_H_
#define SQHEX_CHAIN_SAMPLER_H_

#include <cstdint>
#include <vector>

#include "sqhex/lattice.h"
#include "sqhex/rng.h"
#include "sqhex/schur.h"
#include "sqhex/signatures.h"

namespace sqhex {

// Horizontal-strip step with equal variables: P(to) proportional to the
// number of semistandard tableaux of shape `to` with len(to) letters.
Signature sample_pr_constant(const Signature& from, Rng& rng);

// Vertical-strip step with all variables equal to b.
Signature sample_st_constant(const Signature& from, double b, Rng& rng);

// Draw from an explicit kernel.
Signature sample_kernel(const Kernel& kernel, Rng& rng);

// Largest kernel the generic path is allowed to enumerate.
constexpr int64_t kKernelLimit = 100000;

// Generic steps: constant fast path when possible, else enumeration.
Signature sample_pr_step(const Signature& from, const std::vector<double>& beta,
                         Rng& rng);
Signature sample_st_step(const Signature& from, const std::vector<double>& beta,
                         Rng& rng);

// Full chain for a lattice spec (throws ValidationError if a step needs an
// enumeration larger than kKernelLimit).
SignatureChain sample_chain(const LatticeSpec& spec, Rng& rng);

// count independent chains; replica i uses the stream (seed, i), so the
// batch does not depend on the number of threads.
std::vector<SignatureChain> sample_chains(const LatticeSpec& spec, uint64_t seed,
                                          int count);

// True if every step of the spec can use the constant fast paths.
bool chain_sampler_is_fast(const LatticeSpec& spec);

}  // namespace sqhex

#endif  // SQHEX_CHAIN_SAMPLER_H_
