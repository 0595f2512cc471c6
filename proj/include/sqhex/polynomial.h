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

// Dense real polynomials (coefficients from degree 0 upward) and their roots.

#ifndef SQHEX_POLYNOMIAL_H_
#define SQHEX_POLYNOMIAL_H_

#include <complex>
#include <vector>

namespace sqhex {

using Poly = std::vector<double>;
using Complex = std::complex<double>;

Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, double c);
// (z - r) factor.
Poly poly_linear(double r);
Poly poly_derivative(const Poly& a);
Complex poly_eval(const Poly& a, Complex z);
double poly_eval(const Poly& a, double z);
// Quotient of a by (z - r), remainder dropped.
Poly poly_deflate(const Poly& a, double r);
// Drops leading coefficients below rel_tol times the largest one.
Poly poly_trim(const Poly& a, double rel_tol = 1e-13);

// Roots via eigenvalues of the balanced companion matrix, each refined by
// two Newton steps on the polynomial.
std::vector<Complex> poly_roots(const Poly& a);

}  // namespace sqhex

#endif  // SQHEX_POLYNOMIAL_H_
