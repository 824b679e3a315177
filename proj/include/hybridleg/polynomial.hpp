#pragma once

#include <complex>
#include <vector>

namespace hybridleg {

// Real polynomial with ascending-degree coefficients:
// p(s) = c[0] + c[1] s + ... + c[n] s^n.
using Polynomial = std::vector<double>;

std::complex<double> evaluate(const Polynomial& coeffs,
                              std::complex<double> s);

// Drops trailing coefficients whose magnitude is below rel_tol times the
// largest coefficient magnitude, returning the numerically effective
// polynomial.  An all-(near-)zero input trims to a single zero coefficient.
Polynomial trim(const Polynomial& coeffs, double rel_tol = 1e-14);

// Coefficient-wise sum and product.
Polynomial add(const Polynomial& a, const Polynomial& b);
Polynomial multiply(const Polynomial& a, const Polynomial& b);

// All complex roots via companion-matrix eigenvalues (after a geometric
// rescaling of s that balances the extreme coefficients, which keeps the
// companion matrix well conditioned for stiff coefficient ranges).  Throws
// std::invalid_argument if the trimmed polynomial is constant.
std::vector<std::complex<double>> polynomial_roots(const Polynomial& coeffs);

// Largest scale-free residual over the candidate roots:
// |p(r)| / (max|c_k| * max(1, |r|)^degree).  A faithful root set scores
// within a small multiple of machine epsilon.
double max_root_residual(const Polynomial& coeffs,
                         const std::vector<std::complex<double>>& roots);

}  // namespace hybridleg
