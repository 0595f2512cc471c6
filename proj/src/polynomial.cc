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

#include "sqhex/polynomial.h"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <unsupported/Eigen/Polynomials>

#include "sqhex/errors.h"

namespace sqhex {

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), 0.0);
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Poly poly_scale(const Poly& a, double c) {
  Poly out(a);
  for (double& v : out) v *= c;
  return out;
}

Poly poly_linear(double r) { return {-r, 1.0}; }

Poly poly_derivative(const Poly& a) {
  if (a.size() <= 1) return {0.0};
  Poly out(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) out[i - 1] = a[i] * static_cast<double>(i);
  return out;
}

Complex poly_eval(const Poly& a, Complex z) {
  Complex s = 0;
  for (size_t i = a.size(); i-- > 0;) s = s * z + a[i];
  return s;
}

double poly_eval(const Poly& a, double z) {
  double s = 0;
  for (size_t i = a.size(); i-- > 0;) s = s * z + a[i];
  return s;
}

Poly poly_deflate(const Poly& a, double r) {
  if (a.size() <= 1) return {0.0};
  Poly q(a.size() - 1);
  double carry = 0;
  for (size_t i = a.size(); i-- > 1;) {
    carry = a[i] + carry * r;
    q[i - 1] = carry;
  }
  return q;
}

Poly poly_trim(const Poly& a, double rel_tol) {
  double big = 0;
  for (double v : a) big = std::max(big, std::abs(v));
  Poly out(a);
  while (out.size() > 1 && std::abs(out.back()) <= rel_tol * big) out.pop_back();
  return out;
}

std::vector<Complex> poly_roots(const Poly& a) {
  const Poly p = poly_trim(a);
  if (p.size() <= 1) return {};
  if (p.size() == 2) return {Complex(-p[0] / p[1], 0.0)};
  Eigen::VectorXd coeffs(p.size());
  for (size_t i = 0; i < p.size(); ++i) coeffs[i] = p[i];
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
  solver.compute(coeffs);
  const Poly dp = poly_derivative(p);
  std::vector<Complex> out;
  for (Eigen::Index i = 0; i < solver.roots().size(); ++i) {
    Complex z = solver.roots()[i];
    for (int step = 0; step < 2; ++step) {
      const Complex d = poly_eval(dp, z);
      if (std::abs(d) == 0) break;
      const Complex next = z - poly_eval(p, z) / d;
      if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
      if (std::abs(poly_eval(p, next)) <= std::abs(poly_eval(p, z))) z = next;
    }
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw NumericError("polynomial root solver did not converge");
    }
    out.push_back(z);
  }
  return out;
}

}  // namespace sqhex
