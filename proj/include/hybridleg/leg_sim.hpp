#pragma once

#include <cstdint>

#include "hybridleg/controller.hpp"
#include "hybridleg/model.hpp"
#include "hybridleg/trajectory.hpp"

// Vertical drop-landing simulation of the compliant leg.  The body is a point
// mass on a vertical rail carried by one or more identical massless legs; the
// knee carries a one-directional physical spring (the passive compliance
// share) and the sampled motor controller (the active share).
//
// Massless-limb conventions: while the foot is pinned the knee rate is
// kinematic (slaved to the body through the leg); in flight the knee follows
// a critically damped position servo toward the rest angle and its rate is
// re-initialized at lift-off, since an inertia-free limb carries no momentum
// of its own.

namespace hybridleg {

/// Ground interaction: either an exact pin constraint on the foot (primary
/// mode) or a regularized spring-damper penalty used for validation.
enum class ContactMode { kPinned, kPenalty };

struct ContactModel {
  double normal_stiffness = 5e4;  // N/m
  double normal_damping = 50.0;   // N*s/m
};

struct DropConfig {
  double drop_height = kReferenceDropHeight;  // m, initial hip height
  double duration = 3.0;                      // s, simulated span
  double physics_dt = 1e-3;                   // s, fixed step
  LegGeometry geometry;
  BodyParams body;          // body.mass is the total carried mass
  ComplianceSplit split;
  ControlSchedule schedule;
  bool one_directional_spring = true;  // false: spring acts in both directions
  ContactMode contact_mode = ContactMode::kPinned;
  ContactModel contact;
  double flight_servo_bandwidth_hz = 2.0;
  int leg_count = 1;  // identical legs in parallel at the shared body height
};

/// Throws std::invalid_argument on inconsistent configuration.
void validate(const DropConfig& config);

/// Knee torque of the one-directional parallel spring: -k_passive * (theta -
/// theta_rest) when flexed past rest, zero when at or short of rest (the
/// tendon goes slack).  Negative = extension torque.
double spring_torque(const ComplianceSplit& split, double theta,
                     double theta_rest);

/// Variant with the spring engaged in both directions.
double bidirectional_spring_torque(const ComplianceSplit& split, double theta,
                                   double theta_rest);

struct LegState {
  double t = 0.0;
  double z = 0.0;         // hip height, m
  double zdot = 0.0;      // m/s
  double theta = 0.0;     // knee flexion, rad
  double thetadot = 0.0;  // rad/s
  bool contact = false;
};

/// Single-leg (or parallel-leg) drop simulator with explicit stepping.
/// Events (touch-down, lift-off) are located inside the step by bisection so
/// phase transitions do not smear energy across samples.
class LegSimulator {
 public:
  explicit LegSimulator(const DropConfig& config);

  /// Advances one physics step.  Returns false once the run is finished
  /// (duration reached or a failure flag raised).
  bool step();

  const LegState& state() const { return state_; }
  const DropConfig& config() const { return config_; }
  bool diverged() const { return diverged_; }
  bool inverted() const { return inverted_; }
  double touchdown_time() const { return touchdown_time_; }
  double touchdown_speed() const { return touchdown_speed_; }
  /// Torques acting on the body through the knee during the last step.
  double applied_motor_torque() const { return applied_motor_; }
  double applied_spring_torque() const { return applied_spring_; }
  /// Vertical force one leg transmits at the current state (0 in flight).
  double leg_force() const;

 private:
  friend LegTrajectory run_drop(const DropConfig&);
  double passive_torque(double theta) const;
  double knee_rate_pinned(double z, double zdot) const;
  double pinned_force(double z, double zdot, double tau_motor) const;
  struct PenaltyForce {
    double thetadot = 0.0;
    double normal = 0.0;      // clamped to >= 0 (what the body feels)
    double raw_normal = 0.0;  // unclamped; sign change marks lift-off
  };
  PenaltyForce penalty_force(double z, double zdot, double theta,
                             double tau_motor) const;
  void advance_flight(double h);
  void advance_pinned(double h);
  void advance_penalty(double h);
  void integrate(double h);
  void enter_stance();
  void enter_flight();
  double foot_height() const;

  DropConfig config_;
  AlignedSchedule aligned_;
  DelayLine line_;
  LegState state_;
  std::int64_t step_index_ = 0;
  double b_knee_ = 0.0;  // damping seen by the knee coordinate
  double servo_omega_ = 0.0;
  double held_motor_ = 0.0;     // scheduled torque held over the step
  double applied_motor_ = 0.0;  // acting on the body (0 in flight)
  double applied_spring_ = 0.0;
  bool diverged_ = false;
  bool inverted_ = false;
  double touchdown_time_ = -1.0;
  double touchdown_speed_ = 0.0;
};

/// Runs a full drop and collects the sampled trajectory (one row per physics
/// step boundary).  Never throws on dynamic failures: divergence and knee
/// inversion are reported through the trajectory flags.
LegTrajectory run_drop(const DropConfig& config);

}  // namespace hybridleg
