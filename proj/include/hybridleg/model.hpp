#pragma once

#include <cmath>

// Core physical types shared by the reduced-order pendulum analysis, the
// articulated-leg drop simulation and the viability sweeps: stiffness
// splitting between a physical spring and an active controller, the
// mass-dependent feedback latency law, and the two-segment leg geometry.

namespace hybridleg {

inline constexpr double kGravity = 9.81;  // m/s^2

// Reference hardware constants for the single-leg test stand.
inline constexpr double kSegmentLength = 0.16;          // m, thigh == shank
inline constexpr double kPulleyRadius = 0.0189;         // m, knee spring pulley
inline constexpr double kLinearSpringStiffness = 4680;  // N/m, leg spring
// Total rotational knee stiffness delivered by the reference spring through
// the reference pulley: k r^2 = 4680 * 0.0189^2 = 1.6717 N*m/rad.
inline constexpr double kReferenceKneeStiffness =
    kLinearSpringStiffness * kPulleyRadius * kPulleyRadius;
inline constexpr double kSingleLegMass = 0.6;              // kg
inline constexpr double kQuadrupedMass = 2.0;              // kg
inline constexpr double kReferenceDropHeight = 0.425;      // m
// Rest knee flexion held in flight.  Chosen so the loaded standing height
// clears the 0.3 m viability floor with margin and a reference drop from
// 0.425 m compresses the leg by roughly a tenth of its length.
inline constexpr double kDefaultRestKneeAngle = 0.40;  // rad

/// How a requested total joint stiffness is divided between a passive
/// parallel spring and the actively rendered (software) component.
/// `lambda_passive` is the passive fraction: 0 = fully active, 1 = fully
/// passive.  The two parts always sum exactly to `k_total`.
struct ComplianceSplit {
  double k_total = kReferenceKneeStiffness;  // N*m/rad, > 0
  double lambda_passive = 1.0;               // in [0, 1]

  double k_passive() const { return lambda_passive * k_total; }
  double k_active() const { return k_total - k_passive(); }
};

/// Validating constructor: throws std::invalid_argument on k_total <= 0,
/// non-finite inputs, or lambda outside [0, 1].
ComplianceSplit make_split(double k_total, double lambda_passive);

/// Sensorimotor latency as a function of body mass, t = 0.031 * m^0.21
/// (seconds).  Throws std::invalid_argument for non-positive mass.
double biological_delay(double mass_kg);

/// Rotational stiffness k_lin * r^2 of a linear spring of stiffness `k_linear`
/// acting on a joint through a pulley of radius `r`.  Throws
/// std::invalid_argument for non-positive arguments.
double rotational_from_linear(double k_linear, double pulley_radius);

/// Two-segment leg with the hip slaved to half the knee angle, so the foot
/// stays directly under the hip and the hip height is 2 L cos(theta/2).
struct LegGeometry {
  double segment_length = kSegmentLength;      // m, L
  double knee_pulley_radius = kPulleyRadius;   // m
  double rest_knee_angle = kDefaultRestKneeAngle;  // rad, flight-held pose
  double hip_constraint_gain = 0.5;            // hip = gain * knee, fixed 1/2

  double max_hip_height() const { return 2.0 * segment_length; }
  double rest_hip_height() const;
};

/// Hip height above the foot for knee flexion `theta_knee` in (0, pi):
/// 2 L cos(theta/2).  Monotonically decreasing; throws std::domain_error
/// outside the open interval.
double hip_height(const LegGeometry& geom, double theta_knee);

/// d(hip height)/d(theta) = -L sin(theta/2).
double hip_height_slope(const LegGeometry& geom, double theta_knee);

/// Inverse of hip_height: knee flexion for a hip height in (0, 2L).
double knee_from_height(const LegGeometry& geom, double height);

/// Lumped body the leg carries: all mass concentrated at the hip.
struct BodyParams {
  double mass = kSingleLegMass;  // kg
  double hip_damping = 0.01;     // N*m*s/rad, at the hip joint
  double knee_damping = 0.05;    // N*m*s/rad, at the knee joint
  double gravity = kGravity;     // m/s^2

  // Viscous drag seen by the knee coordinate once the hip is slaved to
  // gain * knee: hip rate = gain * knee rate and hip torque maps back
  // through the same gain, so its contribution scales with gain^2.
  double knee_space_damping(double hip_constraint_gain) const {
    return knee_damping +
           hip_damping * hip_constraint_gain * hip_constraint_gain;
  }
};

void validate(const LegGeometry& geom);
void validate(const BodyParams& body);

}  // namespace hybridleg
