#pragma once

#include <complex>
#include <vector>

#include "hybridleg/model.hpp"
#include "hybridleg/polynomial.hpp"
#include "hybridleg/trajectory.hpp"

namespace hybridleg {

/// Single-joint strut linearized about its equilibrium angle: a lumped
/// inertia restrained by gravity, viscous damping, a passive spring and an
/// actively rendered spring whose feedback signal arrives `delay` seconds
/// late.  The passive/active split comes from `split`; gravity contributes
/// an extra m*g*l restoring term at the linearization point.
struct PendulumParams {
  double inertia = 0.0128;     // kg*m^2 (default: 0.5 kg point mass at 0.16 m)
  double mass = 0.5;           // kg
  double com_distance = 0.16;  // m, pivot to center of mass
  double damping = 0.14;       // N*m*s/rad
  ComplianceSplit split{1.15, 0.0};
  double delay = 0.0;          // s, sensorimotor latency on the feedback path
  double equilibrium = 0.0;    // rad, linearization point
  double gravity = kGravity;   // m/s^2

  double gravity_stiffness() const { return mass * gravity * com_distance; }
};

void validate(const PendulumParams& params);

/// (3,3) rational approximant of the dead-time factor e^(-t_d s):
///   numerator   120 - 60 (t_d s) + 12 (t_d s)^2 - (t_d s)^3
///   denominator 120 + 60 (t_d s) + 12 (t_d s)^2 + (t_d s)^3
/// Coefficients ascending in s.  Exact (both sides constant) at t_d = 0.
struct PadeApproximant {
  Polynomial numerator;
  Polynomial denominator;
};

PadeApproximant pade3(double t_d);

/// Closed-loop denominator after replacing the dead time with pade3:
///   (I s^2 + B s + k_passive + m g l) * D(s) + k_active * N(s).
/// Degree 5 whenever the active path and the delay are both present.  When
/// k_active == 0 the delayed path carries no signal, so the dead-time factor
/// is cancelled instead of multiplied in, leaving the physical quadratic —
/// this keeps the pole set exactly delay-invariant for a fully passive
/// joint.
Polynomial characteristic_polynomial(const PendulumParams& params);

struct PoleSet {
  std::vector<std::complex<double>> roots;  // conjugate-closed
  std::complex<double> dominant;            // maximal real part
  double max_residual = 0.0;                // scale-free root residual
};

PoleSet poles(const PendulumParams& params);

/// Time response of the delayed closed loop to a step change of the
/// commanded equilibrium angle by `step` radians at t = 0, integrated with
/// classical RK4 on the method-of-steps formulation; the delayed angle is
/// read from the solution history by cubic Hermite interpolation.  The
/// history before t = 0 is the pre-step equilibrium (system at rest).
/// Samples are returned every `dt` from 0 to t_end inclusive.  Requires
/// dt <= delay when delay > 0 (the lag must be resolvable); non-finite
/// blow-up sets the trajectory's diverged flag instead of throwing.
Trajectory step_response(const PendulumParams& params, double step,
                         double t_end, double dt);

/// Step-response instability classifier: the angle strays more than
/// 10 * |step| from the commanded final angle at any sample, or the
/// integration blew up.
bool step_unstable(const Trajectory& traj, double theta_final, double step);

}  // namespace hybridleg
