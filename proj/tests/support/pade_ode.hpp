#pragma once

// Independent realization of the delayed-stiffness strut used to
// cross-check the library's delay-line integrator: the dead time is replaced
// by its (3,3) rational approximant and the resulting 5th-order transfer
// function is simulated as a state-space ODE in controllable canonical form
// with classical RK4.  Everything here is local on purpose — no library
// polynomial or integrator code is reused.

#include <array>
#include <cmath>
#include <vector>

namespace pade_ode {

struct StrutParams {
  double inertia;
  double damping;
  double k_passive;
  double k_active;
  double gravity_stiffness;  // m * g * l at the linearization point
  double delay;
};

// Coefficients ascending in s.
using Poly = std::vector<double>;

inline Poly multiply(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

inline Poly add(Poly a, const Poly& b) {
  if (b.size() > a.size()) a.resize(b.size(), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

/// Closed-loop transfer function theta/theta_cmd with the dead time
/// e^(-t_d s) replaced by N/D, N = 120 - 60 x + 12 x^2 - x^3,
/// D = 120 + 60 x + 12 x^2 + x^3, x = t_d s.  The commanded angle enters
/// undelayed on both the passive and the active path (the setpoint lives
/// inside the controller); only the measured angle fed back on the active
/// path carries the dead time:
///   num = (k_p + k_g + k_a) D
///   den = (I s^2 + B s + k_p + k_g) D + k_a N
struct TransferFunction {
  Poly num;
  Poly den;
};

inline TransferFunction closed_loop(const StrutParams& p) {
  const double td = p.delay;
  const Poly N{120.0, -60.0 * td, 12.0 * td * td, -td * td * td};
  const Poly D{120.0, 60.0 * td, 12.0 * td * td, td * td * td};
  const Poly plant{p.k_passive + p.gravity_stiffness, p.damping, p.inertia};
  TransferFunction tf;
  tf.num = multiply(
      Poly{p.k_passive + p.gravity_stiffness + p.k_active}, D);
  tf.den = add(multiply(plant, D), multiply(Poly{p.k_active}, N));
  return tf;
}

/// Unit-amplitude step response of num/den (times `step`) sampled every `dt`
/// from 0 to t_end inclusive, via RK4 on the controllable canonical form.
/// States start at zero: the pre-step system is at its old equilibrium and
/// the output is returned as a deviation from it.
inline std::vector<double> step_response(const StrutParams& p, double step,
                                         double t_end, double dt,
                                         double rk_dt = 1e-5) {
  TransferFunction tf = closed_loop(p);
  const std::size_t n = tf.den.size() - 1;  // system order
  const double lead = tf.den[n];
  std::vector<double> a(n);  // monic denominator, ascending
  for (std::size_t i = 0; i < n; ++i) a[i] = tf.den[i] / lead;
  std::vector<double> b(n, 0.0);  // numerator, deg(num) < deg(den)
  for (std::size_t i = 0; i < tf.num.size(); ++i) b[i] = tf.num[i] / lead;

  // x' = A x + e_n u;  y = b . x  (companion A, input into the last state)
  auto deriv = [&](const std::vector<double>& x, double u,
                   std::vector<double>& dx) {
    for (std::size_t i = 0; i + 1 < n; ++i) dx[i] = x[i + 1];
    double acc = u;
    for (std::size_t i = 0; i < n; ++i) acc -= a[i] * x[i];
    dx[n - 1] = acc;
  };
  auto output = [&](const std::vector<double>& x) {
    double y = 0.0;
    for (std::size_t i = 0; i < n; ++i) y += b[i] * x[i];
    return y;
  };

  std::vector<double> x(n, 0.0), k1(n), k2(n), k3(n), k4(n), tmp(n);
  std::vector<double> samples;
  const std::size_t out_count = static_cast<std::size_t>(
      std::llround(t_end / dt));
  const std::size_t sub = static_cast<std::size_t>(
      std::ceil(dt / rk_dt - 1e-12));
  const double h = dt / static_cast<double>(sub);
  samples.push_back(step * output(x));
  for (std::size_t s = 0; s < out_count; ++s) {
    for (std::size_t q = 0; q < sub; ++q) {
      deriv(x, 1.0, k1);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
      deriv(tmp, 1.0, k2);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
      deriv(tmp, 1.0, k3);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
      deriv(tmp, 1.0, k4);
      for (std::size_t i = 0; i < n; ++i)
        x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    samples.push_back(step * output(x));
  }
  return samples;
}

}  // namespace pade_ode
