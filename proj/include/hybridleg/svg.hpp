#pragma once

#include <string>

#include "hybridleg/sweep.hpp"

namespace hybridleg {

/// Standalone SVG heatmap for one (frequency, duty cycle) panel of a sweep:
/// passive fraction on the vertical axis (1 at the top), delay on the
/// horizontal axis.  Failed cells are grey; viable cells are color-graded by
/// settling time (fast = deep green, approaching the limit = pale yellow).
std::string viability_panel_svg(const SweepResult& result, double frequency,
                                double duty_cycle,
                                double max_settling_time = 0.7);

/// File name used for a panel: panel_f<freq>_dc<duty-percent>.svg.
std::string panel_file_name(double frequency, double duty_cycle);

}  // namespace hybridleg
