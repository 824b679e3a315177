#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hybridleg/metrics.hpp"

using namespace hybridleg;

namespace {

struct Series {
  std::vector<double> t;
  std::vector<double> z;
};

Series sample(double t_end, double dt, auto&& f) {
  Series s;
  for (double t = 0.0; t <= t_end + 1e-12; t += dt) {
    s.t.push_back(t);
    s.z.push_back(f(t));
  }
  return s;
}

LegTrajectory landed_trajectory(double final_height, double duration) {
  LegTrajectory traj;
  const double dt = 1e-3;
  const auto n = static_cast<std::size_t>(duration / dt);
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) * dt;
    traj.time.push_back(t);
    traj.z.push_back(t < 0.1 ? 0.425 - t : final_height);
    traj.zdot.push_back(0.0);
    traj.theta.push_back(0.4);
    traj.thetadot.push_back(0.0);
    traj.tau_motor.push_back(0.0);
    traj.tau_spring.push_back(0.0);
    traj.contact.push_back(t >= 0.1);
  }
  traj.touchdown_time = 0.1;
  traj.touchdown_speed = 1.0;
  return traj;
}

}  // namespace

TEST_CASE("a flat trace settles instantly at its own level") {
  Series s = sample(3.0, 1e-3, [](double) { return 0.31; });
  const SettleMetrics m = settle_metrics(s.t, s.z, 0.425, 0.0);
  CHECK(m.final_height == doctest::Approx(0.31).epsilon(1e-12));
  CHECK(m.band == doctest::Approx(0.05 * (0.425 - 0.31)).epsilon(1e-9));
  CHECK(m.settling_time == 0.0);
}

TEST_CASE("final height is the mean of the trailing window") {
  // Ends at t = 3.0 s; the trailing 0.5 s window spans samples i = 2500..3000
  // inclusive (the boundary sample counts).  Values alternate 0.30 / 0.32.
  std::vector<double> t, z;
  for (int i = 0; i <= 3000; ++i) {
    t.push_back(i * 1e-3);
    z.push_back(i < 2500 ? 0.40 : (i % 2 == 0 ? 0.30 : 0.32));
  }
  const SettleMetrics m = settle_metrics(t, z, 0.425, 0.0);
  // 251 even-indexed samples at 0.30 and 250 odd-indexed at 0.32.
  const double expected = (251.0 * 0.30 + 250.0 * 0.32) / 501.0;
  CHECK(m.final_height == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("settling time of a ringing decay matches a direct enumeration") {
  const double H = 0.31, A = 0.08, rate = 3.0, f = 4.0, t_touch = 0.2;
  auto decay = [&](double t) {
    if (t < t_touch) return 0.425;
    const double u = t - t_touch;
    return H + A * std::exp(-rate * u) *
                   std::cos(2.0 * std::numbers::pi * f * u);
  };
  Series s = sample(3.2, 1e-3, decay);
  const SettleMetrics m = settle_metrics(s.t, s.z, 0.425, t_touch);

  // Independent enumeration of the same definition: the last sample that
  // sits outside the band around the trailing-window mean.
  double final_sum = 0.0;
  std::size_t n_tail = 0;
  for (std::size_t i = 0; i < s.t.size(); ++i)
    if (s.t[i] >= s.t.back() - 0.5) {
      final_sum += s.z[i];
      ++n_tail;
    }
  const double final_height = final_sum / static_cast<double>(n_tail);
  const double band = 0.05 * std::abs(0.425 - final_height);
  double last_outside = 0.0;
  for (std::size_t i = 0; i < s.t.size(); ++i)
    if (s.t[i] >= t_touch && std::abs(s.z[i] - final_height) > band)
      last_outside = s.t[i] - t_touch;

  CHECK(m.final_height == doctest::Approx(final_height).epsilon(1e-12));
  CHECK(m.settling_time == doctest::Approx(last_outside).epsilon(1e-12));
  // The band is ~5.7 mm; an 80 mm envelope decaying at rate 3 needs roughly
  // ln(A/band)/rate = 0.88 s, but the ringing lobes let go a little sooner.
  CHECK(m.settling_time > 0.5);
  CHECK(m.settling_time < 0.95);
}

TEST_CASE("a wider band can only shorten the settling time") {
  auto decay = [](double t) {
    return 0.31 + 0.07 * std::exp(-2.0 * t) *
                      std::cos(2.0 * std::numbers::pi * 3.0 * t);
  };
  Series s = sample(3.0, 1e-3, decay);
  double prev = 1e9;
  for (double frac : {0.02, 0.05, 0.10, 0.20}) {
    const SettleMetrics m =
        settle_metrics(s.t, s.z, 0.425, 0.0, 0.5, frac);
    CHECK(m.settling_time <= prev);
    prev = m.settling_time;
  }
}

TEST_CASE("settle metrics reject traces shorter than the averaging tail") {
  Series s = sample(0.3, 1e-3, [](double) { return 0.31; });
  CHECK_THROWS_AS(settle_metrics(s.t, s.z, 0.425, 0.0, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(settle_metrics({}, {}, 0.425, 0.0), std::invalid_argument);
}

TEST_CASE("verdict precedence: hard flags outrank threshold failures") {
  LegTrajectory traj = landed_trajectory(0.31, 3.0);

  SUBCASE("clean landing is viable") {
    const LandingVerdict v = judge_landing(traj, 0.425);
    CHECK(v.viable);
    CHECK(v.reason == FailureReason::kNone);
    CHECK(v.touchdown_time == doctest::Approx(0.1));
  }
  SUBCASE("divergence dominates everything") {
    traj.diverged = true;
    traj.inverted = true;
    const LandingVerdict v = judge_landing(traj, 0.425);
    CHECK_FALSE(v.viable);
    CHECK(v.reason == FailureReason::kDiverged);
  }
  SUBCASE("inversion outranks the threshold checks") {
    traj.inverted = true;
    const LandingVerdict v = judge_landing(traj, 0.425);
    CHECK_FALSE(v.viable);
    CHECK(v.reason == FailureReason::kInverted);
  }
  SUBCASE("never landing is reported when there is no contact") {
    for (auto& c : traj.contact) c = 0;
    traj.touchdown_time = -1.0;
    const LandingVerdict v = judge_landing(traj, 0.425);
    CHECK_FALSE(v.viable);
    CHECK(v.reason == FailureReason::kNeverLanded);
  }
}

TEST_CASE("collapsing below the height floor outranks slow settling" *
          doctest::description("a trace that is both low and slow reports "
                               "the collapse")) {
  LegTrajectory traj = landed_trajectory(0.25, 3.0);
  // Inject late ripple so the settling time is also above threshold.
  for (std::size_t i = 0; i < traj.time.size(); ++i)
    if (traj.time[i] > 0.1)
      traj.z[i] = 0.25 + 0.05 * std::cos(20.0 * traj.time[i]) *
                             std::exp(-0.5 * traj.time[i]);
  const LandingVerdict v = judge_landing(traj, 0.425);
  CHECK_FALSE(v.viable);
  CHECK(v.reason == FailureReason::kCollapsed);
}

TEST_CASE("slow settling fails a landing that holds a healthy height") {
  LegTrajectory traj = landed_trajectory(0.31, 3.0);
  for (std::size_t i = 0; i < traj.time.size(); ++i)
    if (traj.time[i] > 0.1)
      traj.z[i] = 0.31 + 0.05 * std::cos(30.0 * traj.time[i]) *
                             std::exp(-1.2 * (traj.time[i] - 0.1));
  const LandingVerdict v = judge_landing(traj, 0.425);
  CHECK_FALSE(v.viable);
  CHECK(v.reason == FailureReason::kSlowSettling);
  CHECK(v.settle.settling_time > 0.7);
}

TEST_CASE("failure reasons have stable names") {
  CHECK(to_string(FailureReason::kNone) == "none");
  CHECK(to_string(FailureReason::kDiverged) == "diverged");
  CHECK(to_string(FailureReason::kInverted) == "inverted");
  CHECK(to_string(FailureReason::kCollapsed) == "collapsed");
  CHECK(to_string(FailureReason::kSlowSettling) == "slow_settling");
  CHECK(to_string(FailureReason::kNeverLanded) == "never_landed");
}

TEST_CASE("linear interpolation hits samples and midpoints") {
  const std::vector<double> t{0.0, 1.0, 2.0};
  const std::vector<double> v{1.0, 3.0, 2.0};
  CHECK(linear_interp(t, v, 1.0) == 3.0);
  CHECK(linear_interp(t, v, 0.5) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(linear_interp(t, v, 1.5) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(linear_interp(t, v, -1.0) == 1.0);
  CHECK(linear_interp(t, v, 9.0) == 2.0);
}

TEST_CASE("identical series have zero error") {
  Series s = sample(2.0, 1e-3, [](double t) { return 0.3 + 0.1 * std::sin(t); });
  CHECK(trajectory_mse(s.t, s.z, s.t, s.z) == 0.0);
}

TEST_CASE("a constant tenth-of-normalization offset scores 0.01") {
  Series a = sample(2.0, 1e-3, [](double) { return 0.30; });
  Series b = sample(2.0, 1e-3, [](double) { return 0.30 + 0.032; });
  CHECK(trajectory_mse(a.t, a.z, b.t, b.z, 0.32) ==
        doctest::Approx(0.01).epsilon(1e-9));
}

TEST_CASE("trajectory error is symmetric and rate-robust") {
  Series a = sample(2.0, 1e-3,
                    [](double t) { return 0.31 + 0.05 * std::cos(3.0 * t); });
  Series b = sample(2.0, 7e-3,
                    [](double t) { return 0.31 + 0.05 * std::cos(3.1 * t); });
  const double ab = trajectory_mse(a.t, a.z, b.t, b.z);
  const double ba = trajectory_mse(b.t, b.z, a.t, a.z);
  CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
  // Same underlying curve sampled at different rates stays close.
  Series c = sample(2.0, 1e-2,
                    [](double t) { return 0.31 + 0.05 * std::cos(3.0 * t); });
  CHECK(trajectory_mse(a.t, a.z, c.t, c.z) < 1e-6);
}

TEST_CASE("trajectory error rejects inputs without a common span") {
  const std::vector<double> t1{0.0, 1.0};
  const std::vector<double> v1{0.0, 0.0};
  const std::vector<double> t2{5.0, 6.0};
  const std::vector<double> v2{0.0, 0.0};
  CHECK_THROWS_AS(trajectory_mse(t1, v1, t2, v2), std::invalid_argument);
  CHECK_THROWS_AS(trajectory_mse({}, {}, t2, v2), std::invalid_argument);
}
