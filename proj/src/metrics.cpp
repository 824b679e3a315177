#include "hybridleg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace hybridleg {

SettleMetrics settle_metrics(const std::vector<double>& time,
                             const std::vector<double>& z,
                             double reference_height, double touchdown_time,
                             double tail, double band_fraction) {
  if (time.size() != z.size()) {
    throw std::invalid_argument("time/height series length mismatch");
  }
  if (time.empty()) {
    throw std::invalid_argument("empty trajectory");
  }
  if (!(tail > 0.0) || !(band_fraction >= 0.0)) {
    throw std::invalid_argument("tail must be > 0 and band fraction >= 0");
  }

  const double t_touch = std::max(touchdown_time, 0.0);
  if (time.back() - t_touch < tail) {
    throw std::invalid_argument(
        "trajectory too short after touch-down for the trailing average");
  }

  SettleMetrics out;
  const double tail_start = time.back() - tail;
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = time.size(); i-- > 0;) {
    if (time[i] < tail_start) break;
    sum += z[i];
    ++count;
  }
  out.final_height = sum / static_cast<double>(count);
  out.band = band_fraction * std::abs(reference_height - out.final_height);

  const double t0 = t_touch;
  out.settling_time = 0.0;
  for (std::size_t i = time.size(); i-- > 0;) {
    if (time[i] < t0) break;
    if (std::abs(z[i] - out.final_height) > out.band) {
      out.settling_time = time[i] - t0;
      break;
    }
  }
  return out;
}

std::string to_string(FailureReason reason) {
  switch (reason) {
    case FailureReason::kNone:
      return "none";
    case FailureReason::kDiverged:
      return "diverged";
    case FailureReason::kInverted:
      return "inverted";
    case FailureReason::kCollapsed:
      return "collapsed";
    case FailureReason::kSlowSettling:
      return "slow_settling";
    case FailureReason::kNeverLanded:
      return "never_landed";
  }
  return "unknown";
}

LandingVerdict judge_landing(const LegTrajectory& traj, double drop_height,
                             const VerdictThresholds& thresholds) {
  LandingVerdict v;
  v.touchdown_time = traj.touchdown_time;
  v.touchdown_speed = traj.touchdown_speed;

  if (traj.diverged) {
    v.reason = FailureReason::kDiverged;
    return v;
  }
  if (traj.inverted) {
    v.reason = FailureReason::kInverted;
    return v;
  }
  if (traj.touchdown_time < 0.0) {
    v.reason = FailureReason::kNeverLanded;
    return v;
  }

  v.settle = settle_metrics(traj.time, traj.z, drop_height,
                            traj.touchdown_time, thresholds.settle_tail,
                            thresholds.band_fraction);
  if (v.settle.final_height < thresholds.min_final_height) {
    v.reason = FailureReason::kCollapsed;
    return v;
  }
  if (v.settle.settling_time > thresholds.max_settling_time) {
    v.reason = FailureReason::kSlowSettling;
    return v;
  }
  v.viable = true;
  v.reason = FailureReason::kNone;
  return v;
}

double linear_interp(const std::vector<double>& time,
                     const std::vector<double>& value, double query) {
  if (time.size() != value.size() || time.empty()) {
    throw std::invalid_argument("series length mismatch or empty series");
  }
  if (query <= time.front()) return value.front();
  if (query >= time.back()) return value.back();
  const auto it = std::upper_bound(time.begin(), time.end(), query);
  const auto i = static_cast<std::size_t>(it - time.begin());
  const double w = (query - time[i - 1]) / (time[i] - time[i - 1]);
  return value[i - 1] + w * (value[i] - value[i - 1]);
}

double trajectory_mse(const std::vector<double>& time_a,
                      const std::vector<double>& value_a,
                      const std::vector<double>& time_b,
                      const std::vector<double>& value_b,
                      double normalization, double sample_rate_hz) {
  if (time_a.size() < 2 || time_b.size() < 2) {
    throw std::invalid_argument("each series needs at least two samples");
  }
  if (!(normalization > 0.0) || !(sample_rate_hz > 0.0)) {
    throw std::invalid_argument("normalization and sample rate must be > 0");
  }
  const double t0 = std::max(time_a.front(), time_b.front());
  const double t1 = std::min(time_a.back(), time_b.back());
  if (!(t1 >= t0)) {
    throw std::invalid_argument("series do not overlap in time");
  }
  const double dt = 1.0 / sample_rate_hz;
  const auto n =
      static_cast<std::size_t>(std::floor((t1 - t0) / dt + 1e-9)) + 1;
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = t0 + static_cast<double>(k) * dt;
    const double d =
        linear_interp(time_a, value_a, t) - linear_interp(time_b, value_b, t);
    acc += d * d;
  }
  return acc / static_cast<double>(n) / (normalization * normalization);
}

}  // namespace hybridleg
