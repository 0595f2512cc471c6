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

#include "sqhex/schur.h"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Dense>

#include "sqhex/errors.h"

namespace sqhex {

namespace {

constexpr double kSeparation = 1e-6;
// Largest layer for the branching evaluation.
constexpr double kMaxBranchStates = 4096;

void check_length(const Signature& lambda, size_t n) {
  if (lambda.size() != n) {
    throw ValidationError("signature length must equal the number of variables");
  }
}

double max_abs(const std::vector<double>& u) {
  double m = 0;
  for (double v : u) m = std::max(m, std::abs(v));
  return m;
}

// Sum_{k=0}^{M-1} a^k b^(M-1-k), the continuous extension of
// (a^M - b^M) / (a - b).
double power_quotient(double a, double b, int m_step) {
  double s = 0;
  for (int k = 0; k < m_step; ++k) {
    s += std::pow(a, k) * std::pow(b, m_step - 1 - k);
  }
  return s;
}

}  // namespace

std::vector<double> complete_homogeneous(const std::vector<double>& u, int kmax) {
  std::vector<double> h(std::max(kmax, 0) + 1, 0.0);
  h[0] = 1.0;
  for (double v : u) {
    for (int k = 1; k <= kmax; ++k) h[k] += v * h[k - 1];
  }
  return h;
}

double schur_bialternant(const Signature& lambda, const std::vector<double>& u) {
  check_length(lambda, u.size());
  const int n = static_cast<int>(u.size());
  if (n == 0) return 1.0;
  const double scale = max_abs(u);
  if (scale == 0) return size_of(lambda) == 0 ? 1.0 : 0.0;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    const double v = u[i] / scale;
    for (int j = 0; j < n; ++j) a(i, j) = std::pow(v, lambda[j] + n - 1 - j);
  }
  double vandermonde = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) vandermonde *= (u[i] - u[j]) / scale;
  }
  return a.partialPivLu().determinant() / vandermonde *
         std::pow(scale, size_of(lambda));
}

double schur_jacobi_trudi(const Signature& lambda, const std::vector<double>& u) {
  check_length(lambda, u.size());
  const int n = static_cast<int>(u.size());
  if (n == 0) return 1.0;
  const double scale = max_abs(u);
  if (scale == 0) return size_of(lambda) == 0 ? 1.0 : 0.0;
  std::vector<double> scaled(u);
  for (double& v : scaled) v /= scale;
  const int kmax = lambda[0] + n;
  const std::vector<double> h = complete_homogeneous(scaled, kmax);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int k = lambda[i] - i + j;
      a(i, j) = k < 0 ? 0.0 : h[k];
    }
  }
  return a.partialPivLu().determinant() * std::pow(scale, size_of(lambda));
}

std::optional<double> schur_branching_sum(const Signature& lambda, const std::vector<double>& u) {
  check_length(lambda, u.size());
  double first_layer = 1;
  for (size_t i = 0; i + 1 < lambda.size(); ++i) first_layer *= lambda[i] - lambda[i + 1] + 1;
  if (first_layer > kMaxBranchStates) return std::nullopt;
  std::map<Signature, double> layer = {{lambda, 1.0}};
  for (int k = static_cast<int>(u.size()); k > 0; --k) {
    std::map<Signature, double> next;
    for (const auto& [mu, w] : layer) {
      const int mu_size = size_of(mu);
      for (Signature& nu : pr_targets(mu)) {
        const double step = std::pow(u[k - 1], mu_size - size_of(nu));
        next[std::move(nu)] += w * step;
      }
    }
    if (static_cast<double>(next.size()) > kMaxBranchStates) return std::nullopt;
    layer = std::move(next);
  }
  double total = 0;
  for (const auto& [nu, w] : layer) total += w;
  return total;
}

double schur_eval(const Signature& lambda, const std::vector<double>& u) {
  check_length(lambda, u.size());
  if (!is_signature(lambda)) throw ValidationError("not a signature");
  // Positive terms only, so accurate even for nearly equal entries.
  if (std::all_of(u.begin(), u.end(), [](double v) { return v > 0; })) {
    if (const auto v = schur_branching_sum(lambda, u)) return *v;
  }
  const double scale = max_abs(u);
  double gap = INFINITY;
  for (size_t i = 0; i < u.size(); ++i) {
    for (size_t j = i + 1; j < u.size(); ++j) {
      gap = std::min(gap, std::abs(u[i] - u[j]));
    }
  }
  if (scale > 0 && gap > kSeparation * scale) {
    return schur_bialternant(lambda, u);
  }
  return schur_jacobi_trudi(lambda, u);
}

Rational schur_exact(const Signature& lambda, const std::vector<Rational>& u) {
  check_length(lambda, u.size());
  const int n = static_cast<int>(u.size());
  if (n == 0) return Rational(1);
  const int kmax = lambda[0] + n;
  std::vector<Rational> h(kmax + 1, Rational(0));
  h[0] = 1;
  for (const Rational& v : u) {
    for (int k = 1; k <= kmax; ++k) h[k] += v * h[k - 1];
  }
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int k = lambda[i] - i + j;
      a[i][j] = k < 0 ? Rational(0) : h[k];
    }
  }
  Rational det(1);
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

double log_schur_constant(const Signature& lambda, double c) {
  const int n = static_cast<int>(lambda.size());
  double out = size_of(lambda) * std::log(c);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double li = lambda[i] - i, lj = lambda[j] - j;
      out += std::log((li - lj) / (j - i));
    }
  }
  return out;
}

double log_schur_staircase(int m_step, const std::vector<double>& x) {
  if (m_step < 1) throw ValidationError("staircase step must be at least 1");
  double out = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    for (size_t j = i + 1; j < x.size(); ++j) {
      out += std::log(power_quotient(x[i], x[j], m_step));
    }
  }
  return out;
}

double schur_staircase(int m_step, const std::vector<double>& x) {
  return std::exp(log_schur_staircase(m_step, x));
}

namespace {

void check_pr_lengths(const Signature& from, const Signature& to, const std::vector<double>& beta) {
  if (to.size() + 1 != from.size() || beta.size() != from.size()) {
    throw ValidationError("pr kernel needs len(to) = len(from) - 1 = len(beta) - 1");
  }
}

void check_st_lengths(const Signature& from, const Signature& to, const std::vector<double>& beta) {
  if (to.size() != from.size() || beta.size() != from.size()) {
    throw ValidationError("st kernel needs equal lengths");
  }
}

// The kernels with the normalizing denominator supplied by the caller.
double pr_weight_with(const Signature& from, const Signature& to, const std::vector<double>& beta,
                      double denominator) {
  if (!interlaces(to, from)) return 0.0;
  const std::vector<double> rest(beta.begin() + 1, beta.end());
  return std::pow(beta[0], size_of(from) - size_of(to)) * schur_eval(to, rest) / denominator;
}

double st_weight_with(const Signature& from, const Signature& to, const std::vector<double>& beta,
                      double denominator) {
  if (!cointerlaces(from, to)) return 0.0;
  return schur_eval(to, beta) / denominator;
}

double st_denominator(const Signature& from, const std::vector<double>& beta) {
  double norm = 1.0;
  for (double b : beta) norm *= 1.0 + b;
  return schur_eval(from, beta) * norm;
}

}  // namespace

double pr_weight(const Signature& from, const Signature& to,
                 const std::vector<double>& beta) {
  check_pr_lengths(from, to, beta);
  return pr_weight_with(from, to, beta, schur_eval(from, beta));
}

double st_weight(const Signature& from, const Signature& to,
                 const std::vector<double>& beta) {
  check_st_lengths(from, to, beta);
  return st_weight_with(from, to, beta, st_denominator(from, beta));
}

std::vector<Signature> pr_targets(const Signature& from) {
  const int len = static_cast<int>(from.size());
  std::vector<Signature> out;
  if (len == 0) return out;
  Signature cur(len - 1);
  // Odometer over from[k+1] <= cur[k] <= from[k].
  for (int k = 0; k < len - 1; ++k) cur[k] = from[k + 1];
  while (true) {
    out.push_back(cur);
    int k = len - 2;
    while (k >= 0 && cur[k] == from[k]) {
      cur[k] = from[k + 1];
      --k;
    }
    if (k < 0) break;
    ++cur[k];
  }
  return out;
}

std::vector<Signature> st_targets(const Signature& from) {
  const int len = static_cast<int>(from.size());
  std::vector<Signature> out;
  for (unsigned mask = 0; mask < (1u << len); ++mask) {
    Signature cur(from);
    for (int k = 0; k < len; ++k) {
      if (mask & (1u << k)) ++cur[k];
    }
    if (is_signature(cur)) out.push_back(cur);
  }
  return out;
}

Kernel pr_kernel(const Signature& from, const std::vector<double>& beta) {
  Kernel out;
  const double denominator = schur_eval(from, beta);
  for (Signature& t : pr_targets(from)) {
    check_pr_lengths(from, t, beta);
    const double p = pr_weight_with(from, t, beta, denominator);
    out.emplace_back(std::move(t), p);
  }
  return out;
}

Kernel st_kernel(const Signature& from, const std::vector<double>& beta) {
  Kernel out;
  const double denominator = st_denominator(from, beta);
  for (Signature& t : st_targets(from)) {
    check_st_lengths(from, t, beta);
    const double p = st_weight_with(from, t, beta, denominator);
    out.emplace_back(std::move(t), p);
  }
  return out;
}

std::vector<double> upper_vector(const LatticeSpec& spec, int level) {
  std::vector<double> out;
  for (int t = level; t <= spec.levels; ++t) out.push_back(spec.upper_weight(t));
  return out;
}

std::vector<double> lower_vector(const LatticeSpec& spec, int level) {
  std::vector<double> out = upper_vector(spec, level);
  const double y = spec.lower_weight(level);
  for (double& v : out) v *= y;
  return out;
}

double gamma_factor(const LatticeSpec& spec, int level) {
  if (spec.is_hexagon(level)) {
    throw ValidationError("gamma factor is defined on square levels only");
  }
  double g = 1.0;
  for (double b : lower_vector(spec, level)) g *= 1.0 + b;
  return g;
}

double log_partition_function_schur(const LatticeSpec& spec) {
  spec.validate();
  double out = 0;
  for (int i = 1; i <= spec.levels; ++i) {
    if (!spec.is_hexagon(i)) {
      for (double b : lower_vector(spec, i)) out += std::log1p(b);
    }
  }
  const Signature omega = signature_from_boundary(spec.boundary);
  const std::vector<double> x = upper_vector(spec, 1);
  bool constant = true;
  for (double v : x) constant = constant && v == x[0];
  if (constant) return out + log_schur_constant(omega, x[0]);
  return out + std::log(schur_eval(omega, x));
}

double partition_function_schur(const LatticeSpec& spec) {
  return std::exp(log_partition_function_schur(spec));
}

double chain_probability(const LatticeSpec& spec, const SignatureChain& chain) {
  try {
    check_chain(spec, chain);
  } catch (const ValidationError&) {
    return 0.0;
  }
  const int n = spec.levels;
  double p = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int len = n - i + 1;
    if (!spec.is_hexagon(i)) {
      p *= st_weight(chain.odd(len), chain.even(len), lower_vector(spec, i));
    }
    p *= pr_weight(chain.even(len), chain.odd(len - 1), upper_vector(spec, i));
  }
  return p;
}

double free_energy_staircase(int m_step, const LatticeSpec& period_spec) {
  if (m_step < 1) throw ValidationError("staircase step must be at least 1");
  const int n = period_spec.period();
  const std::vector<double>& x = period_spec.weights.ne_upper;
  double pairs = 0, diag = 0, square = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      pairs += std::log(power_quotient(x[i], x[j], m_step));
    }
    diag += std::log(m_step * std::pow(x[i], m_step - 1));
  }
  for (const auto& [key, y] : period_spec.weights.ne_lower) {
    for (int t = 0; t < n; ++t) square += std::log1p(y * x[t]);
  }
  return (pairs + 0.5 * diag + 0.5 * square) / (static_cast<double>(n) * n);
}

}  // namespace sqhex
