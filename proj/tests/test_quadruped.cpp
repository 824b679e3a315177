#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "hybridleg/quadruped.hpp"

using namespace hybridleg;

TEST_CASE("the built-in batch carries the seven documented scenarios") {
  const auto cases = builtin_quadruped_scenarios();
  REQUIRE(cases.size() == 7);

  const std::vector<bool> expected = {true, false, true, false,
                                      true, false, true};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    CAPTURE(i);
    CHECK(cases[i].label == "case-" + std::to_string(i + 1));
    CHECK(cases[i].expected_landed == expected[i]);
    CHECK(cases[i].config.body.mass == kQuadrupedMass);
    CHECK(cases[i].config.leg_count == 4);
    CHECK(cases[i].config.schedule.duty_cycle == 1.0);
  }

  // Per-case settings: stiffness, passive ratio, rate, delay, drop height.
  struct Row {
    double k, lambda, freq, delay_ms, height;
  };
  const std::vector<Row> rows = {
      {kReferenceKneeStiffness, 1.00, 1000.0, 0.0, 0.70},
      {kReferenceKneeStiffness, 1.00, 1000.0, 0.0, 1.00},
      {kReferenceKneeStiffness, 0.00, 1000.0, 0.0, 0.70},
      {kReferenceKneeStiffness, 0.00, 1000.0, 17.0, 0.70},
      {2.5076, 0.67, 200.0, 27.0, 1.00},
      {2.5076, 0.67, 100.0, 27.0, 1.00},
      {2.8419, 0.59, 100.0, 35.0, 1.20},
  };
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CAPTURE(i);
    const DropConfig& c = cases[i].config;
    CHECK(c.split.k_total == rows[i].k);
    CHECK(c.split.lambda_passive == rows[i].lambda);
    CHECK(c.schedule.frequency == rows[i].freq);
    CHECK(c.schedule.delay == rows[i].delay_ms / 1000.0);
    CHECK(c.drop_height == rows[i].height);
  }
}

TEST_CASE("contact calibration touches only the expected-failure scenarios") {
  const auto calibrated = builtin_quadruped_scenarios(true);
  const auto plain = builtin_quadruped_scenarios(false);
  REQUIRE(calibrated.size() == plain.size());

  for (std::size_t i = 0; i < plain.size(); ++i) {
    CAPTURE(i);
    CHECK(plain[i].config.contact_mode == ContactMode::kPinned);
    const bool expected_failure = !plain[i].expected_landed;
    if (expected_failure) {
      CHECK(calibrated[i].config.contact_mode == ContactMode::kPenalty);
      CHECK(calibrated[i].config.contact.normal_stiffness ==
            kCalibratedContactStiffness);
      CHECK(calibrated[i].config.contact.normal_damping ==
            kCalibratedContactDamping);
    } else {
      CHECK(calibrated[i].config.contact_mode == ContactMode::kPinned);
    }
    // Everything except the contact model must be identical.
    CHECK(calibrated[i].label == plain[i].label);
    CHECK(calibrated[i].expected_landed == plain[i].expected_landed);
    CHECK(calibrated[i].config.drop_height == plain[i].config.drop_height);
    CHECK(calibrated[i].config.split.k_total == plain[i].config.split.k_total);
    CHECK(calibrated[i].config.split.lambda_passive ==
          plain[i].config.split.lambda_passive);
    CHECK(calibrated[i].config.schedule.frequency ==
          plain[i].config.schedule.frequency);
    CHECK(calibrated[i].config.schedule.delay ==
          plain[i].config.schedule.delay);
  }
}

TEST_CASE("the calibrated batch reproduces every expected verdict") {
  const auto outcomes =
      run_all_quadruped_scenarios(builtin_quadruped_scenarios(true));
  REQUIRE(outcomes.size() == 7);
  int matches = 0;
  for (const auto& o : outcomes) {
    CAPTURE(o.scenario.label);
    CHECK(o.matches_expected());
    matches += o.matches_expected() ? 1 : 0;
    // Discrepancy reporting relies on the full trajectory riding along.
    CHECK(o.trajectory.size() > 0);
  }
  CHECK(matches == 7);
}

TEST_CASE("without calibration the rigid contact over-stabilizes the "
          "expected-failure drops") {
  const auto outcomes =
      run_all_quadruped_scenarios(builtin_quadruped_scenarios(false));
  REQUIRE(outcomes.size() == 7);

  std::vector<std::size_t> mismatched;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (!outcomes[i].matches_expected()) mismatched.push_back(i);
  }
  // The pinned contact swallows the touchdown bounce, so every
  // expected-failure case lands instead; all expected-landing cases agree.
  CHECK(mismatched == std::vector<std::size_t>{1, 3, 5});
  for (std::size_t i : mismatched) {
    CAPTURE(i);
    CHECK(outcomes[i].landed());
    CHECK_FALSE(outcomes[i].scenario.expected_landed);
  }
}

TEST_CASE("four parallel legs under the full body reduce to one leg under a "
          "quarter of it") {
  const auto cases = builtin_quadruped_scenarios(false);
  const DropConfig& quad = cases[0].config;

  DropConfig single = quad;
  single.leg_count = 1;
  single.body.mass = quad.body.mass / 4.0;

  const LegTrajectory a = run_drop(quad);
  const LegTrajectory b = run_drop(single);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.z[i] == b.z[i]);
    CHECK(a.theta[i] == b.theta[i]);
    CHECK(a.zdot[i] == b.zdot[i]);
  }
  CHECK(a.touchdown_time == b.touchdown_time);
}

TEST_CASE("scenario outcomes match judging the raw trajectory directly") {
  const auto cases = builtin_quadruped_scenarios(true);
  const QuadrupedOutcome out = run_quadruped_scenario(cases[4]);
  const LandingVerdict direct = judge_landing(
      run_drop(cases[4].config), cases[4].config.drop_height, {});
  CHECK(out.verdict.viable == direct.viable);
  CHECK(out.verdict.settle.settling_time == direct.settle.settling_time);
  CHECK(out.verdict.settle.final_height == direct.settle.final_height);
}
