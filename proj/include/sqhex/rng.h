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

#ifndef SQHEX_RNG_H_
#define SQHEX_RNG_H_

#include <cmath>
#include <cstdint>
#include <random>

namespace sqhex {

// One independent random stream per (seed, replica). Replicas can be drawn in
// any order or in parallel and still reproduce the same values.
class Rng {
 public:
  Rng(uint64_t seed, uint64_t replica) {
    std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                      static_cast<uint32_t>(replica),
                      static_cast<uint32_t>(replica >> 32), 0x5eedu};
    engine_.seed(seq);
  }

  // Uniform on [0, 1) with 53 random bits; identical across standard libraries.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Exp(1) variate.
  double exponential() { return -std::log1p(-uniform()); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sqhex

#endif  // SQHEX_RNG_H_
