#pragma once

#include <cstdint>
#include <vector>

#include "hybridleg/model.hpp"

// Sampled stiffness controller: the active share of the joint compliance is
// rendered by a motor that samples delayed joint feedback at a fixed rate and
// holds each commanded torque for a duty-cycle-limited activation window.

namespace hybridleg {

/// Timing of the sampled controller.  The controller ticks every
/// 1/frequency seconds; each tick's torque is held for
/// clamp(duty_cycle / frequency, min_activation, 1/frequency) and the output
/// is zero for the rest of the period.
struct ControlSchedule {
  double frequency = 1000.0;     // Hz, > 0
  double duty_cycle = 1.0;       // (0, 1]
  double delay = 0.0;            // s, >= 0, sensing latency
  double min_activation = 1e-3;  // s, shortest realizable torque pulse

  double dt_control() const { return 1.0 / frequency; }
  double dt_activation() const;
};

/// Throws std::invalid_argument on out-of-range fields.
void validate(const ControlSchedule& sched);

/// Fixed-capacity history of (time, angle) samples with linear-interpolated
/// lookup.  Queries before the oldest stored sample clamp to it; a query at
/// exactly a stored timestamp returns that sample bit-for-bit.
class DelayLine {
 public:
  /// `horizon` is the largest look-back ever queried; `dt` the recording
  /// period.  Capacity is sized from their ratio.
  DelayLine(double horizon, double dt);

  void record(double t, double theta);
  double sample(double t) const;  // throws if nothing recorded yet
  std::size_t size() const { return count_; }

 private:
  std::vector<double> times_;
  std::vector<double> values_;
  std::size_t capacity_ = 0;
  std::size_t head_ = 0;   // next write slot
  std::size_t count_ = 0;  // stored samples
};

/// Torque the motor renders for the active stiffness share given delayed
/// feedback: -k_active * (theta_feedback - theta_rest).  Negative = knee
/// extension for a flexed feedback angle.
double motor_torque(const ComplianceSplit& split, double theta_feedback,
                    double theta_rest);

/// Stateless scheduled controller output at simulation step `step` (physics
/// period `dt`): samples the delay line at tick_time - delay on each tick and
/// holds the resulting torque through the activation window, zero otherwise.
/// Tick boundaries are aligned to physics steps; `steps_per_tick` and
/// `hold_steps` come from align_schedule below.
struct AlignedSchedule {
  std::int64_t steps_per_tick = 1;
  std::int64_t hold_steps = 1;
  double delay = 0.0;
  double dt = 1e-3;
};

/// Maps a ControlSchedule onto an integer physics grid.  Throws
/// std::invalid_argument if the control period is not a whole number of
/// physics steps (within 1e-9 relative).
AlignedSchedule align_schedule(const ControlSchedule& sched, double dt);

double scheduled_torque(const AlignedSchedule& sched, const DelayLine& line,
                        std::int64_t step, const ComplianceSplit& split,
                        double theta_rest);

/// Convenience wrapper taking continuous time (t = step * dt).
double scheduled_torque(const ControlSchedule& sched, const DelayLine& line,
                        double t, double dt, const ComplianceSplit& split,
                        double theta_rest);

}  // namespace hybridleg
