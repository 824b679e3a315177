#include "hybridleg/polynomial.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace hybridleg {

std::complex<double> evaluate(const Polynomial& coeffs,
                              std::complex<double> s) {
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    acc = acc * s + coeffs[i];
  }
  return acc;
}

Polynomial trim(const Polynomial& coeffs, double rel_tol) {
  double max_mag = 0.0;
  for (double c : coeffs) max_mag = std::max(max_mag, std::abs(c));
  std::size_t n = coeffs.size();
  while (n > 1 && std::abs(coeffs[n - 1]) <= rel_tol * max_mag) --n;
  if (n == 0) return {0.0};
  return Polynomial(coeffs.begin(), coeffs.begin() + static_cast<long>(n));
}

Polynomial add(const Polynomial& a, const Polynomial& b) {
  Polynomial out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Polynomial multiply(const Polynomial& a, const Polynomial& b) {
  if (a.empty() || b.empty()) return {};
  Polynomial out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

std::vector<std::complex<double>> polynomial_roots(const Polynomial& coeffs) {
  const Polynomial p = trim(coeffs);
  if (p.size() < 2) {
    throw std::invalid_argument(
        "polynomial is constant (or zero); it has no finite root set");
  }
  const auto degree = p.size() - 1;

  // Rescale s = sigma * u so the constant and leading coefficients of the
  // u-polynomial have equal magnitude; this bounds the companion-matrix
  // entries for stiff coefficient ranges (e.g. delay polynomials whose
  // leading coefficient carries a tiny t_d^3 factor).
  double sigma = 1.0;
  if (p.front() != 0.0) {
    sigma = std::pow(std::abs(p.front() / p.back()),
                     1.0 / static_cast<double>(degree));
  }
  Polynomial q(p.size());
  double scale = 1.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    q[k] = p[k] * scale;
    scale *= sigma;
  }

  Eigen::MatrixXd companion =
      Eigen::MatrixXd::Zero(static_cast<long>(degree),
                            static_cast<long>(degree));
  const double lead = q.back();
  for (std::size_t k = 0; k < degree; ++k) {
    companion(static_cast<long>(k), static_cast<long>(degree - 1)) =
        -q[k] / lead;
    if (k + 1 < degree) {
      companion(static_cast<long>(k + 1), static_cast<long>(k)) = 1.0;
    }
  }

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion,
                                             /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("companion-matrix eigenvalue solve failed");
  }

  std::vector<std::complex<double>> out(degree);
  for (std::size_t k = 0; k < degree; ++k) {
    out[k] = sigma * solver.eigenvalues()(static_cast<long>(k));
  }
  // Deterministic order: by real part, then imaginary part.
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

double max_root_residual(const Polynomial& coeffs,
                         const std::vector<std::complex<double>>& roots) {
  const Polynomial p = trim(coeffs);
  double max_mag = 0.0;
  for (double c : p) max_mag = std::max(max_mag, std::abs(c));
  if (max_mag == 0.0) return 0.0;
  const auto degree = p.size() - 1;

  double worst = 0.0;
  for (const auto& r : roots) {
    const double growth =
        std::pow(std::max(1.0, std::abs(r)), static_cast<double>(degree));
    worst = std::max(worst, std::abs(evaluate(p, r)) / (max_mag * growth));
  }
  return worst;
}

}  // namespace hybridleg
