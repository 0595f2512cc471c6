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

#include "sqhex/chain_sampler.h"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "sqhex/errors.h"
#include "sqhex/parallel.h"

namespace sqhex {

namespace {

constexpr double kProbSlack = 1e-9;

bool all_equal(const std::vector<double>& v) {
  for (double x : v) {
    if (x != v[0]) return false;
  }
  return true;
}

}  // namespace

// With equal variables the target law is proportional to the Vandermonde of
// the shifted positions l_k = to_k + L-1-k, each l_k ranging over
// [e_{k+1}, e_k - 1] where e_k = from_k + L - k. That law is the integer
// part of the continuous law proportional to the Vandermonde on the product
// of intervals [e_{k+1}, e_k], because averaging a monic polynomial basis over
// unit cells keeps the determinant. The continuous law is sampled as the
// roots of sum_j w_j / (x - e_j) with iid exponential w_j, one per interval.
// Only floors are needed, so each root is located by integer bisection.
Signature sample_pr_constant(const Signature& from, Rng& rng) {
  const int len = static_cast<int>(from.size());
  if (len == 0) throw ValidationError("cannot shrink an empty signature");
  std::vector<double> e(len), w(len);
  for (int k = 0; k < len; ++k) {
    e[k] = from[k] + len - 1 - k;
    w[k] = rng.exponential();
  }
  auto f = [&](double x) {
    double s = 0;
    for (int j = 0; j < len; ++j) s += w[j] / (x - e[j]);
    return s;
  };
  Signature to(len - 1);
  for (int k = 0; k < len - 1; ++k) {
    // Root lies in (e[k+1], e[k]); find the largest integer t in
    // [e[k+1], e[k]-1] left of it. f > 0 left of the root.
    long lo = static_cast<long>(e[k + 1]);
    long hi = static_cast<long>(e[k]) - 1;
    while (lo < hi) {
      const long mid = lo + (hi - lo + 1) / 2;
      if (f(static_cast<double>(mid)) > 0) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    to[k] = static_cast<int>(lo) - (len - 2 - k);
  }
  return to;
}

// With all variables equal to b, P(S) is proportional to
// b^|S| Vandermonde(m + 1_S) / Vandermonde(m) over moving sets S, with
// m_k = from_k + L - k. This equals det(A_SS) for the matrix
//   A_jk = w_k / (m_k + 1 - m_j),   w_k = b prod_{i != k} (1 + 1/(m_k - m_i)),
// except for a blocked particle (m_{k-1} = m_k + 1) whose column keeps the
// single entry A_{k-1,k} = -b prod_{i != k, k-1} (1 + 1/(m_k - m_i)).
// S is drawn with the sequential kernel algorithm on K = A (I + A)^{-1}.
Signature sample_st_constant(const Signature& from, double b, Rng& rng) {
  const int len = static_cast<int>(from.size());
  if (len == 0) return from;
  std::vector<double> m(len);
  for (int k = 0; k < len; ++k) m[k] = from[k] + len - 1 - k;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(len, len);
  for (int k = 0; k < len; ++k) {
    const bool blocked = k > 0 && m[k - 1] == m[k] + 1;
    double prod = b;
    for (int i = 0; i < len; ++i) {
      if (i == k || (blocked && i == k - 1)) continue;
      prod *= 1.0 + 1.0 / (m[k] - m[i]);
    }
    if (blocked) {
      a(k - 1, k) = -prod;
    } else {
      for (int j = 0; j < len; ++j) a(j, k) = prod / (m[k] + 1 - m[j]);
    }
  }
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(len, len);
  Eigen::MatrixXd kernel = (id + a).transpose().partialPivLu().solve(a.transpose()).transpose();
  if (!kernel.allFinite()) throw NumericError("vertical-strip kernel is not finite");
  Signature to(from);
  for (int k = 0; k < len; ++k) {
    double p = kernel(k, k);
    if (p < -kProbSlack || p > 1 + kProbSlack) {
      throw NumericError("vertical-strip probability " + std::to_string(p) +
                         " outside [0,1]");
    }
    p = std::clamp(p, 0.0, 1.0);
    const bool take = rng.uniform() < p;
    const double pivot = take ? kernel(k, k) : kernel(k, k) - 1.0;
    if (take) ++to[k];
    if (k + 1 < len && pivot != 0.0) {
      const Eigen::VectorXd col = kernel.col(k);
      const Eigen::RowVectorXd row = kernel.row(k);
      kernel.noalias() -= col * row / pivot;
    }
  }
  if (!is_signature(to)) throw NumericError("vertical-strip step broke ordering");
  return to;
}

Signature sample_kernel(const Kernel& kernel, Rng& rng) {
  double total = 0;
  for (const auto& [s, p] : kernel) total += p;
  if (!(total > 0)) throw NumericError("kernel has no mass");
  double u = rng.uniform() * total;
  for (const auto& [s, p] : kernel) {
    if (u < p) return s;
    u -= p;
  }
  return kernel.back().first;
}

Signature sample_pr_step(const Signature& from, const std::vector<double>& beta,
                         Rng& rng) {
  if (all_equal(beta)) return sample_pr_constant(from, rng);
  double count = 1;
  for (size_t k = 0; k + 1 < from.size(); ++k) count *= from[k] - from[k + 1] + 1;
  if (count > kKernelLimit) {
    throw ValidationError(
        "unequal weights on a long signature: use the kasteleyn backend");
  }
  return sample_kernel(pr_kernel(from, beta), rng);
}

Signature sample_st_step(const Signature& from, const std::vector<double>& beta,
                         Rng& rng) {
  if (all_equal(beta)) return sample_st_constant(from, beta[0], rng);
  if (from.size() > 16) {
    throw ValidationError(
        "unequal weights on a long signature: use the kasteleyn backend");
  }
  return sample_kernel(st_kernel(from, beta), rng);
}

SignatureChain sample_chain(const LatticeSpec& spec, Rng& rng) {
  spec.validate();
  const int n = spec.levels;
  SignatureChain chain;
  chain.rows.resize(2 * n + 1);
  chain.rows[0] = signature_from_boundary(spec.boundary);
  for (int i = 1; i <= n; ++i) {
    const Signature& below = chain.rows[2 * i - 2];
    chain.rows[2 * i - 1] =
        spec.is_hexagon(i) ? below
                           : sample_st_step(below, lower_vector(spec, i), rng);
    chain.rows[2 * i] =
        sample_pr_step(chain.rows[2 * i - 1], upper_vector(spec, i), rng);
  }
  return chain;
}

std::vector<SignatureChain> sample_chains(const LatticeSpec& spec, uint64_t seed,
                                          int count) {
  spec.validate();
  std::vector<SignatureChain> out(std::max(count, 0));
  parallel_for(count, [&](int i) {
    Rng rng(seed, static_cast<uint64_t>(i));
    out[i] = sample_chain(spec, rng);
  });
  return out;
}

bool chain_sampler_is_fast(const LatticeSpec& spec) {
  return all_equal(upper_vector(spec, 1));
}

}  // namespace sqhex
