#pragma once

#include <string>
#include <vector>

#include "hybridleg/trajectory.hpp"

namespace hybridleg {

// Post-landing trajectory statistics.
//
// final_height is the mean height over the trailing `tail` seconds of the
// trace (robust against residual ripple).  The settle band is
// band_fraction * |reference_height - final_height|, i.e. a fraction of the
// total excursion from the release height down to steady state.
// settling_time is the last sample instant, measured from touchdown_time, at
// which |z(t) - final_height| still exceeds the band; 0 if the trace never
// leaves the band after touch-down.
struct SettleMetrics {
  double final_height = 0.0;
  double band = 0.0;
  double settling_time = 0.0;
};

SettleMetrics settle_metrics(const std::vector<double>& time,
                             const std::vector<double>& z,
                             double reference_height, double touchdown_time,
                             double tail = 0.5, double band_fraction = 0.05);

enum class FailureReason {
  kNone,
  kDiverged,       // non-finite state during integration
  kInverted,       // knee left (0, pi): leg folded through or snapped straight
  kCollapsed,      // steady-state hip height below the minimum
  kSlowSettling,   // settling time above the maximum
  kNeverLanded,    // no ground contact within the simulated window
};

std::string to_string(FailureReason reason);

struct VerdictThresholds {
  double max_settling_time = 0.7;  // s
  double min_final_height = 0.3;   // m
  double settle_tail = 0.5;        // s of trace averaged for final height
  double band_fraction = 0.05;     // settle band as fraction of excursion
};

struct LandingVerdict {
  bool viable = false;
  FailureReason reason = FailureReason::kNone;
  SettleMetrics settle{};
  double touchdown_time = -1.0;
  double touchdown_speed = 0.0;
};

// Classifies a drop trajectory.  Hard failure flags (diverged, inverted) take
// precedence over the threshold checks; collapsed outranks slow settling.
LandingVerdict judge_landing(const LegTrajectory& traj, double drop_height,
                             const VerdictThresholds& thresholds = {});

// Linear interpolation on a sampled series with strictly increasing
// timestamps; queries outside the span clamp to the end values.
double linear_interp(const std::vector<double>& time,
                     const std::vector<double>& value, double query);

// Mean squared difference between two sampled series after resampling both
// onto a uniform grid covering their common time span, divided by
// normalization^2 (a length scale making the result dimensionless).
double trajectory_mse(const std::vector<double>& time_a,
                      const std::vector<double>& value_a,
                      const std::vector<double>& time_b,
                      const std::vector<double>& value_b,
                      double normalization = 0.32,
                      double sample_rate_hz = 1000.0);

}  // namespace hybridleg
