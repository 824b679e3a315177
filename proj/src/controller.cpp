#include "hybridleg/controller.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hybridleg {

double ControlSchedule::dt_activation() const {
  const double period = dt_control();
  return std::clamp(duty_cycle * period, std::min(min_activation, period),
                    period);
}

void validate(const ControlSchedule& sched) {
  if (!std::isfinite(sched.frequency) || sched.frequency <= 0.0) {
    throw std::invalid_argument("control frequency must be > 0, got " +
                                std::to_string(sched.frequency));
  }
  if (!std::isfinite(sched.duty_cycle) || sched.duty_cycle <= 0.0 ||
      sched.duty_cycle > 1.0) {
    throw std::invalid_argument("duty cycle must lie in (0, 1], got " +
                                std::to_string(sched.duty_cycle));
  }
  if (!std::isfinite(sched.delay) || sched.delay < 0.0) {
    throw std::invalid_argument("feedback delay must be >= 0, got " +
                                std::to_string(sched.delay));
  }
  if (!std::isfinite(sched.min_activation) || sched.min_activation < 0.0) {
    throw std::invalid_argument("min activation must be >= 0");
  }
}

DelayLine::DelayLine(double horizon, double dt) {
  if (!(dt > 0.0) || horizon < 0.0) {
    throw std::invalid_argument("delay line needs dt > 0 and horizon >= 0");
  }
  // Oldest value that can ever be needed lags the newest by `horizon`; keep
  // a couple of spare slots so interpolation always has both neighbours.
  capacity_ = static_cast<std::size_t>(std::ceil(horizon / dt)) + 4;
  times_.assign(capacity_, 0.0);
  values_.assign(capacity_, 0.0);
}

void DelayLine::record(double t, double theta) {
  if (count_ > 0) {
    const std::size_t newest = (head_ + capacity_ - 1) % capacity_;
    if (!(t > times_[newest])) {
      throw std::invalid_argument("delay line timestamps must increase");
    }
  }
  times_[head_] = t;
  values_[head_] = theta;
  head_ = (head_ + 1) % capacity_;
  count_ = std::min(count_ + 1, capacity_);
}

double DelayLine::sample(double t) const {
  if (count_ == 0) {
    throw std::logic_error("delay line sampled before any record");
  }
  const std::size_t newest = (head_ + capacity_ - 1) % capacity_;
  const std::size_t oldest = (head_ + capacity_ - count_) % capacity_;
  if (t >= times_[newest]) return values_[newest];
  if (t <= times_[oldest]) return values_[oldest];
  // Walk back from the newest sample; the look-back is bounded by the
  // horizon, which is a handful of control periods in practice.
  std::size_t hi = newest;
  for (std::size_t n = 1; n < count_; ++n) {
    const std::size_t lo = (hi + capacity_ - 1) % capacity_;
    if (times_[lo] <= t) {
      if (t == times_[lo]) return values_[lo];  // exact hit, no rounding
      const double f = (t - times_[lo]) / (times_[hi] - times_[lo]);
      return values_[lo] + f * (values_[hi] - values_[lo]);
    }
    hi = lo;
  }
  return values_[oldest];
}

double motor_torque(const ComplianceSplit& split, double theta_feedback,
                    double theta_rest) {
  return -split.k_active() * (theta_feedback - theta_rest);
}

AlignedSchedule align_schedule(const ControlSchedule& sched, double dt) {
  validate(sched);
  if (!(dt > 0.0)) throw std::invalid_argument("physics dt must be > 0");
  const double steps = sched.dt_control() / dt;
  const auto rounded = static_cast<std::int64_t>(std::llround(steps));
  if (rounded < 1 || std::abs(steps - static_cast<double>(rounded)) >
                         1e-9 * std::max(1.0, steps)) {
    throw std::invalid_argument(
        "control period must be a whole number of physics steps (frequency " +
        std::to_string(sched.frequency) + " Hz at dt " + std::to_string(dt) +
        " s)");
  }
  AlignedSchedule out;
  out.steps_per_tick = rounded;
  const double hold = sched.dt_activation() / dt;
  out.hold_steps = std::clamp<std::int64_t>(std::llround(hold),
                                            std::int64_t{1}, rounded);
  out.delay = sched.delay;
  out.dt = dt;
  return out;
}

double scheduled_torque(const AlignedSchedule& sched, const DelayLine& line,
                        std::int64_t step, const ComplianceSplit& split,
                        double theta_rest) {
  if (step < 0) return 0.0;
  const std::int64_t phase = step % sched.steps_per_tick;
  if (phase >= sched.hold_steps) return 0.0;
  const std::int64_t tick_step = step - phase;
  const double tick_time = static_cast<double>(tick_step) * sched.dt;
  const double feedback = line.sample(tick_time - sched.delay);
  return motor_torque(split, feedback, theta_rest);
}

double scheduled_torque(const ControlSchedule& sched, const DelayLine& line,
                        double t, double dt, const ComplianceSplit& split,
                        double theta_rest) {
  const AlignedSchedule aligned = align_schedule(sched, dt);
  const auto step = static_cast<std::int64_t>(std::llround(t / dt));
  return scheduled_torque(aligned, line, step, split, theta_rest);
}

}  // namespace hybridleg
