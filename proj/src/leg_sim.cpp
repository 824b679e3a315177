#include "hybridleg/leg_sim.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hybridleg {

namespace {
constexpr double kEventBisections = 40;  // locates events to ~1e-12 * dt
constexpr int kMaxEventsPerStep = 8;
}  // namespace

void validate(const DropConfig& config) {
  validate(config.geometry);
  validate(config.body);
  validate(config.schedule);
  make_split(config.split.k_total, config.split.lambda_passive);
  if (!(config.drop_height > 0.0)) {
    throw std::invalid_argument("drop height must be > 0");
  }
  if (!(config.duration > 0.0)) {
    throw std::invalid_argument("duration must be > 0");
  }
  if (!(config.physics_dt > 0.0)) {
    throw std::invalid_argument("physics dt must be > 0");
  }
  if (!(config.flight_servo_bandwidth_hz > 0.0)) {
    throw std::invalid_argument("flight servo bandwidth must be > 0");
  }
  if (config.leg_count < 1) {
    throw std::invalid_argument("leg count must be >= 1");
  }
  if (config.contact_mode == ContactMode::kPenalty) {
    if (!(config.contact.normal_stiffness > 0.0)) {
      throw std::invalid_argument("penalty contact stiffness must be > 0");
    }
    const double b_knee =
        config.body.knee_space_damping(config.geometry.hip_constraint_gain);
    if (config.contact.normal_damping <= 0.0 && b_knee <= 0.0) {
      throw std::invalid_argument(
          "penalty contact needs contact damping or joint damping > 0 (the "
          "massless-leg force balance is otherwise indeterminate)");
    }
  }
}

double spring_torque(const ComplianceSplit& split, double theta,
                     double theta_rest) {
  const double deflection = theta - theta_rest;
  if (deflection <= 0.0) return 0.0;
  return -split.k_passive() * deflection;
}

double bidirectional_spring_torque(const ComplianceSplit& split, double theta,
                                   double theta_rest) {
  return -split.k_passive() * (theta - theta_rest);
}

LegSimulator::LegSimulator(const DropConfig& config)
    : config_(config),
      aligned_(align_schedule(config.schedule, config.physics_dt)),
      line_(config.schedule.delay + 2.0 * config.schedule.dt_control() +
                4.0 * config.physics_dt,
            config.physics_dt) {
  validate(config_);
  b_knee_ = config_.body.knee_space_damping(config_.geometry.hip_constraint_gain);
  servo_omega_ = 2.0 * std::numbers::pi * config_.flight_servo_bandwidth_hz;

  state_.t = 0.0;
  state_.z = config_.drop_height;
  state_.zdot = 0.0;
  state_.theta = config_.geometry.rest_knee_angle;
  state_.thetadot = 0.0;
  state_.contact = false;
  if (foot_height() <= 0.0) {
    // Released at or below standing height: start grounded.
    touchdown_time_ = 0.0;
    touchdown_speed_ = 0.0;
    enter_stance();
  }
}

double LegSimulator::passive_torque(double theta) const {
  return config_.one_directional_spring
             ? spring_torque(config_.split, theta,
                             config_.geometry.rest_knee_angle)
             : bidirectional_spring_torque(config_.split, theta,
                                           config_.geometry.rest_knee_angle);
}

double LegSimulator::foot_height() const {
  return state_.z - hip_height(config_.geometry, state_.theta);
}

double LegSimulator::knee_rate_pinned(double z, double zdot) const {
  const double theta = knee_from_height(config_.geometry, z);
  return zdot / hip_height_slope(config_.geometry, theta);
}

// Vertical force one pinned leg applies to the body.  With the foot pinned
// the system is one-dimensional in the hip height z; the knee torques map to
// a vertical force through the kinematic gain dh/dtheta:
//   F = (tau_spring + tau_motor - b*thetadot) / (dh/dtheta)
// Positive pushes the body up; a negative value means the leg would have to
// pull on the ground, which triggers lift-off.
double LegSimulator::pinned_force(double z, double zdot,
                                  double tau_motor) const {
  const double theta = knee_from_height(config_.geometry, z);
  const double slope = hip_height_slope(config_.geometry, theta);
  const double thetadot = zdot / slope;
  const double q = passive_torque(theta) + tau_motor - b_knee_ * thetadot;
  return q / slope;
}

// Penalty (regularized) contact: the foot is free and the ground pushes back
// with a one-sided spring-damper.  The limb is massless, so the knee rate is
// whatever balances the knee torques against the ground-force moment:
//   tau_spring + tau_motor - b*thetadot + N * L sin(theta/2) = 0
//   N = max(0, k_c * penetration - b_c * penetration_rate')
// Solving the pair for thetadot gives a first-order knee update; N then
// drives the body.
LegSimulator::PenaltyForce LegSimulator::penalty_force(
    double z, double zdot, double theta, double tau_motor) const {
  const double L = config_.geometry.segment_length;
  const double s = std::sin(0.5 * theta);
  const double h = 2.0 * L * std::cos(0.5 * theta);
  const double kc = config_.contact.normal_stiffness;
  const double bc = config_.contact.normal_damping;
  const double tau_static = passive_torque(theta) + tau_motor;

  PenaltyForce out;
  const double denom = b_knee_ + bc * L * L * s * s;
  out.thetadot =
      (L * s * (kc * (h - z) - bc * zdot) + tau_static) / denom;
  const double rate = -L * s * out.thetadot - zdot;  // penetration rate
  out.raw_normal = kc * (h - z) + bc * rate;
  out.normal = out.raw_normal;
  if (out.normal < 0.0) {
    out.normal = 0.0;
    // Unloaded: the knee balance reduces to the joint torques alone.
    out.thetadot = b_knee_ > 0.0 ? tau_static / b_knee_ : 0.0;
  }
  return out;
}

void LegSimulator::advance_flight(double h) {
  // Ballistic closed-form position update (exact for constant gravity).
  const double g = config_.body.gravity;
  state_.z += state_.zdot * h - 0.5 * g * h * h;
  state_.zdot -= g * h;
  // Critically damped knee servo toward the rest pose.
  const double w = servo_omega_;
  const double acc = w * w * (config_.geometry.rest_knee_angle - state_.theta) -
                     2.0 * w * state_.thetadot;
  state_.thetadot += h * acc;
  state_.theta += h * state_.thetadot;
  state_.t += h;
}

void LegSimulator::advance_pinned(double h) {
  const double force = pinned_force(state_.z, state_.zdot, held_motor_);
  const double acc = -config_.body.gravity +
                     static_cast<double>(config_.leg_count) * force /
                         config_.body.mass;
  state_.zdot += h * acc;
  state_.z += h * state_.zdot;
  state_.t += h;
  if (state_.z > 0.0 && state_.z < config_.geometry.max_hip_height()) {
    state_.theta = knee_from_height(config_.geometry, state_.z);
    state_.thetadot = knee_rate_pinned(state_.z, state_.zdot);
  }
}

void LegSimulator::advance_penalty(double h) {
  const PenaltyForce pf =
      penalty_force(state_.z, state_.zdot, state_.theta, held_motor_);
  const double acc = -config_.body.gravity +
                     static_cast<double>(config_.leg_count) * pf.normal /
                         config_.body.mass;
  state_.zdot += h * acc;
  state_.z += h * state_.zdot;
  state_.theta += h * pf.thetadot;
  state_.thetadot = pf.thetadot;
  state_.t += h;
}

void LegSimulator::enter_stance() {
  state_.contact = true;
  if (config_.contact_mode == ContactMode::kPinned) {
    // The foot pins where it touched; the knee rate becomes kinematic.
    state_.theta = knee_from_height(config_.geometry, state_.z);
    state_.thetadot = knee_rate_pinned(state_.z, state_.zdot);
  }
}

void LegSimulator::enter_flight() {
  state_.contact = false;
  // A massless limb carries no momentum: the servo restarts from rest.
  state_.thetadot = 0.0;
}

// Advances the state by h, splitting at phase-transition events.
void LegSimulator::integrate(double h) {
  for (int events = 0; h > 0.0 && events < kMaxEventsPerStep; ++events) {
    const LegState saved = state_;
    const bool was_contact = state_.contact;

    const auto trial = [&](double span) {
      state_ = saved;
      if (!was_contact) {
        advance_flight(span);
      } else if (config_.contact_mode == ContactMode::kPinned) {
        advance_pinned(span);
      } else {
        advance_penalty(span);
      }
    };
    trial(h);

    // Hard failures: non-finite state or the knee leaving (0, pi).
    if (!std::isfinite(state_.z) || !std::isfinite(state_.zdot) ||
        !std::isfinite(state_.theta) || !std::isfinite(state_.thetadot)) {
      diverged_ = true;
      return;
    }
    if (state_.contact && config_.contact_mode == ContactMode::kPinned &&
        (state_.z <= 0.0 || state_.z >= config_.geometry.max_hip_height())) {
      inverted_ = true;
      return;
    }
    if (state_.theta <= 0.0 || state_.theta >= std::numbers::pi) {
      inverted_ = true;
      return;
    }

    // Event functions, evaluated on the trial end state.
    double event_value = 1.0;
    if (!was_contact) {
      event_value = state_.z - hip_height(config_.geometry, state_.theta);
    } else if (config_.contact_mode == ContactMode::kPinned) {
      event_value = pinned_force(state_.z, state_.zdot, held_motor_);
    } else {
      event_value =
          penalty_force(state_.z, state_.zdot, state_.theta, held_motor_)
              .raw_normal;
    }
    if (event_value > 0.0) return;  // no transition inside this span

    // Bisect for the transition time within (0, h].
    double lo = 0.0;
    double hi = h;
    for (int i = 0; i < kEventBisections; ++i) {
      const double mid = 0.5 * (lo + hi);
      trial(mid);
      double v;
      if (!was_contact) {
        v = state_.z - hip_height(config_.geometry, state_.theta);
      } else if (config_.contact_mode == ContactMode::kPinned) {
        v = pinned_force(state_.z, state_.zdot, held_motor_);
      } else {
        v = penalty_force(state_.z, state_.zdot, state_.theta, held_motor_)
                .raw_normal;
      }
      if (v > 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    trial(hi);

    if (!was_contact) {
      if (touchdown_time_ < 0.0) {
        touchdown_time_ = state_.t;
        touchdown_speed_ = std::abs(state_.zdot);
      }
      enter_stance();
    } else {
      enter_flight();
    }
    h -= hi;
  }
  if (h > 0.0) {
    // Event chatter guard: finish the step in the current phase.
    if (!state_.contact) {
      advance_flight(h);
    } else if (config_.contact_mode == ContactMode::kPinned) {
      advance_pinned(h);
    } else {
      advance_penalty(h);
    }
  }
}

double LegSimulator::leg_force() const {
  if (!state_.contact) return 0.0;
  if (config_.contact_mode == ContactMode::kPinned) {
    return pinned_force(state_.z, state_.zdot, held_motor_);
  }
  return penalty_force(state_.z, state_.zdot, state_.theta, held_motor_)
      .normal;
}

bool LegSimulator::step() {
  if (diverged_ || inverted_) return false;
  const double dt = config_.physics_dt;
  if (state_.t >= config_.duration - 0.5 * dt) return false;

  // Sense, then decide: the controller reads the delay line at tick times.
  line_.record(state_.t, state_.theta);
  held_motor_ = scheduled_torque(aligned_, line_, step_index_, config_.split,
                                 config_.geometry.rest_knee_angle);

  integrate(dt);
  ++step_index_;
  // Keep timestamps on the exact step grid so delay-line lookups at integer
  // multiples of dt hit recorded samples exactly (no drift accumulation).
  state_.t = static_cast<double>(step_index_) * dt;

  if (state_.contact) {
    applied_motor_ = held_motor_;
    applied_spring_ = passive_torque(state_.theta);
  } else {
    applied_motor_ = 0.0;
    applied_spring_ = 0.0;
  }
  return !(diverged_ || inverted_);
}

LegTrajectory run_drop(const DropConfig& config) {
  LegSimulator sim(config);
  LegTrajectory traj;
  const auto steps =
      static_cast<std::size_t>(std::llround(config.duration /
                                            config.physics_dt));
  traj.time.reserve(steps + 1);
  traj.z.reserve(steps + 1);

  const auto record = [&]() {
    const LegState& s = sim.state();
    traj.time.push_back(s.t);
    traj.z.push_back(s.z);
    traj.zdot.push_back(s.zdot);
    traj.theta.push_back(s.theta);
    traj.thetadot.push_back(s.thetadot);
    traj.tau_motor.push_back(sim.applied_motor_torque());
    traj.tau_spring.push_back(sim.applied_spring_torque());
    traj.contact.push_back(s.contact ? 1 : 0);
  };

  record();
  while (sim.step()) record();
  if (sim.diverged() || sim.inverted()) record();

  traj.diverged = sim.diverged();
  traj.inverted = sim.inverted();
  traj.touchdown_time = sim.touchdown_time();
  traj.touchdown_speed = sim.touchdown_speed();
  return traj;
}

}  // namespace hybridleg
