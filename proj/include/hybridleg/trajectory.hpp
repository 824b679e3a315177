#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

// Time-series containers produced by the simulators plus the CSV encoding
// used by the command-line tools (SI units, 6 significant digits).

namespace hybridleg {

/// Generic scalar time series (pendulum angle, hip height, ...).
struct Trajectory {
  std::vector<double> time;
  std::vector<double> value;
  bool diverged = false;  // non-finite state encountered; series truncated
};

/// Full state history of a drop simulation.  `z` is the hip (body) height
/// above ground, `theta` the knee flexion angle.  Torques are the values
/// applied at the knee during the sample's step (0 in flight).
struct LegTrajectory {
  std::vector<double> time;
  std::vector<double> z;
  std::vector<double> zdot;
  std::vector<double> theta;
  std::vector<double> thetadot;
  std::vector<double> tau_motor;
  std::vector<double> tau_spring;
  std::vector<std::uint8_t> contact;

  bool diverged = false;   // non-finite state; run truncated at the sample
  bool inverted = false;   // knee left (0, pi); run truncated at the sample
  double touchdown_time = -1.0;  // first ground contact, < 0 if never
  double touchdown_speed = 0.0;  // hip speed magnitude at first contact

  std::size_t size() const { return time.size(); }
  /// View of the hip-height channel as a generic series.
  Trajectory hip_series() const;
};

/// CSV with header "t,z,zdot,theta,thetadot,tau_motor,tau_spring,contact".
std::string to_csv(const LegTrajectory& traj);
/// CSV with header "t,<name>".
std::string to_csv(const Trajectory& traj, const std::string& value_name);

void write_csv(const LegTrajectory& traj, const std::filesystem::path& file);
void write_csv(const Trajectory& traj, const std::string& value_name,
               const std::filesystem::path& file);

/// Reads a time series from CSV.  Uses the column named `t` (or the first
/// column) as time and the column named `z` (else `theta`, else `value`,
/// else the second column) as the value channel.
Trajectory read_series_csv(const std::filesystem::path& file);

}  // namespace hybridleg
