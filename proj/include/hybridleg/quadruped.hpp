#pragma once

#include <string>
#include <vector>

#include "hybridleg/leg_sim.hpp"
#include "hybridleg/metrics.hpp"

namespace hybridleg {

/// One quadruped drop scenario: a 2 kg body carried by four identical legs
/// sharing a single vertical coordinate, plus the verdict the scenario is
/// expected to produce.  Expectations are data, not physics: they ride along
/// so batch runs can report which scenarios disagree.
struct QuadrupedScenario {
  std::string label;
  DropConfig config;        // leg_count = 4, body.mass = total robot mass
  bool expected_landed = true;
};

struct QuadrupedOutcome {
  QuadrupedScenario scenario;
  LegTrajectory trajectory;
  LandingVerdict verdict;

  bool landed() const { return verdict.viable; }
  bool matches_expected() const {
    return landed() == scenario.expected_landed;
  }
};

/// Contact calibration applied to the expected-failure scenarios when
/// `calibrated_contact` is true (see builtin_quadruped_scenarios).
inline constexpr double kCalibratedContactStiffness = 5.0e4;  // N/m
inline constexpr double kCalibratedContactDamping = 12.0;     // N s/m

/// The seven built-in scenarios (per-leg knee stiffness, passive ratio,
/// control frequency, sensorimotor delay, drop height):
///   1: 1.6717, 1.00, 1000 Hz,  0 ms, 0.70 m -> lands
///   2: 1.6717, 1.00, 1000 Hz,  0 ms, 1.00 m -> fails
///   3: 1.6717, 0.00, 1000 Hz,  0 ms, 0.70 m -> lands
///   4: 1.6717, 0.00, 1000 Hz, 17 ms, 0.70 m -> fails
///   5: 2.5076, 0.67,  200 Hz, 27 ms, 1.00 m -> lands
///   6: 2.5076, 0.67,  100 Hz, 27 ms, 1.00 m -> fails
///   7: 2.8419, 0.59,  100 Hz, 35 ms, 1.20 m -> lands
///
/// With `calibrated_contact` (the default) the three expected-failure cases
/// run on a calibrated compliant contact instead of the rigid pinned
/// contact, which reproduces the expected verdict for all seven cases.
/// With it disabled every case uses the pinned contact; cases 2, 4 and 6
/// then land and are reported as discrepancies by batch runs.
std::vector<QuadrupedScenario> builtin_quadruped_scenarios(
    bool calibrated_contact = true);

QuadrupedOutcome run_quadruped_scenario(const QuadrupedScenario& scenario,
                                        const VerdictThresholds& thresholds = {});

std::vector<QuadrupedOutcome> run_all_quadruped_scenarios(
    const std::vector<QuadrupedScenario>& scenarios,
    const VerdictThresholds& thresholds = {});

}  // namespace hybridleg
