#include "hybridleg/pendulum.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace hybridleg {

void validate(const PendulumParams& params) {
  if (!(params.inertia > 0.0)) {
    throw std::invalid_argument("pendulum inertia must be > 0");
  }
  if (!(params.mass >= 0.0) || !(params.com_distance >= 0.0)) {
    throw std::invalid_argument("mass and com distance must be >= 0");
  }
  if (!(params.damping >= 0.0)) {
    throw std::invalid_argument("damping must be >= 0");
  }
  if (!(params.delay >= 0.0)) {
    throw std::invalid_argument("delay must be >= 0");
  }
  if (!(params.gravity >= 0.0)) {
    throw std::invalid_argument("gravity must be >= 0");
  }
  make_split(params.split.k_total, params.split.lambda_passive);
}

PadeApproximant pade3(double t_d) {
  if (!(t_d >= 0.0)) {
    throw std::invalid_argument("dead time must be >= 0");
  }
  const double td2 = t_d * t_d;
  const double td3 = td2 * t_d;
  PadeApproximant out;
  out.numerator = {120.0, -60.0 * t_d, 12.0 * td2, -td3};
  out.denominator = {120.0, 60.0 * t_d, 12.0 * td2, td3};
  if (t_d == 0.0) {
    out.numerator = {120.0};
    out.denominator = {120.0};
  }
  return out;
}

Polynomial characteristic_polynomial(const PendulumParams& params) {
  validate(params);
  const double k_passive = params.split.k_passive();
  const double k_active = params.split.k_active();
  const Polynomial plant = {k_passive + params.gravity_stiffness(),
                            params.damping, params.inertia};
  if (k_active == 0.0) {
    // No active path: the dead-time factor multiplies both sides of the
    // loop equation and cancels, so the physical quadratic is exact and
    // the poles do not depend on the delay at all.
    return plant;
  }
  const PadeApproximant pade = pade3(params.delay);
  Polynomial active = pade.numerator;
  for (double& c : active) c *= k_active;
  return trim(add(multiply(plant, pade.denominator), active));
}

PoleSet poles(const PendulumParams& params) {
  const Polynomial poly = characteristic_polynomial(params);
  PoleSet out;
  out.roots = polynomial_roots(poly);
  out.max_residual = max_root_residual(poly, out.roots);
  out.dominant = out.roots.front();
  for (const auto& r : out.roots) {
    if (r.real() > out.dominant.real() ||
        (r.real() == out.dominant.real() &&
         std::abs(r.imag()) > std::abs(out.dominant.imag()))) {
      out.dominant = r;
    }
  }
  if (out.dominant.imag() < 0.0) {
    out.dominant = std::conj(out.dominant);  // deterministic half-plane
  }
  return out;
}

namespace {

// Dense solution history on the fixed step grid, supporting cubic Hermite
// interpolation for the delayed-angle lookups of the method of steps.
class History {
 public:
  History(double dt, double initial_angle)
      : dt_(dt), angle_{initial_angle}, rate_{0.0} {}

  void push(double angle, double rate) {
    angle_.push_back(angle);
    rate_.push_back(rate);
  }

  // Angle at absolute time t <= (size-1)*dt; clamps to the pre-step
  // equilibrium for t <= 0.
  double angle_at(double t) const {
    if (t <= 0.0) return angle_.front();
    const double pos = t / dt_;
    auto k = static_cast<std::size_t>(pos);
    if (k >= angle_.size() - 1) k = angle_.size() - 2;
    const double u = pos - static_cast<double>(k);
    const double h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
    const double h10 = u * (1.0 - u) * (1.0 - u);
    const double h01 = u * u * (3.0 - 2.0 * u);
    const double h11 = u * u * (u - 1.0);
    return h00 * angle_[k] + h10 * dt_ * rate_[k] + h01 * angle_[k + 1] +
           h11 * dt_ * rate_[k + 1];
  }

 private:
  double dt_;
  std::vector<double> angle_;
  std::vector<double> rate_;
};

}  // namespace

Trajectory step_response(const PendulumParams& params, double step,
                         double t_end, double dt) {
  validate(params);
  if (!(dt > 0.0) || !(t_end > 0.0)) {
    throw std::invalid_argument("dt and t_end must be > 0");
  }
  if (params.delay > 0.0 && dt > params.delay * (1.0 + 1e-12)) {
    throw std::invalid_argument(
        "dt must not exceed the delay (the lag must span at least one step)");
  }

  const double k_passive = params.split.k_passive();
  const double k_active = params.split.k_active();
  const double k_grav = params.gravity_stiffness();
  const double inv_inertia = 1.0 / params.inertia;
  const double command = step;  // command deviation from the old equilibrium

  // Deviation coordinates x = theta - old equilibrium; history at rest.
  const bool delayed = params.delay > 0.0;
  History history(dt, 0.0);

  const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
  Trajectory traj;
  traj.time.reserve(steps + 1);
  traj.value.reserve(steps + 1);
  traj.time.push_back(0.0);
  traj.value.push_back(params.equilibrium);

  double x = 0.0;
  double v = 0.0;
  for (std::size_t n = 0; n < steps; ++n) {
    const double t = static_cast<double>(n) * dt;

    // x_fb: delayed angle seen by the active path at a given stage time;
    // with zero delay it is the stage angle itself (plain RK4 on the ODE).
    const auto accel = [&](double stage_t, double xs, double vs) {
      const double x_fb = delayed ? history.angle_at(stage_t - params.delay)
                                  : xs;
      return (-params.damping * vs - (k_passive + k_grav) * (xs - command) -
              k_active * (x_fb - command)) *
             inv_inertia;
    };

    const double k1x = v;
    const double k1v = accel(t, x, v);
    const double k2x = v + 0.5 * dt * k1v;
    const double k2v = accel(t + 0.5 * dt, x + 0.5 * dt * k1x,
                             v + 0.5 * dt * k1v);
    const double k3x = v + 0.5 * dt * k2v;
    const double k3v = accel(t + 0.5 * dt, x + 0.5 * dt * k2x,
                             v + 0.5 * dt * k2v);
    const double k4x = v + dt * k3v;
    const double k4v = accel(t + dt, x + dt * k3x, v + dt * k3v);

    x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);

    if (!std::isfinite(x) || !std::isfinite(v) || std::abs(x) > 1e9) {
      traj.diverged = true;
      break;
    }
    history.push(x, v);
    traj.time.push_back(static_cast<double>(n + 1) * dt);
    traj.value.push_back(params.equilibrium + x);
  }
  return traj;
}

bool step_unstable(const Trajectory& traj, double theta_final, double step) {
  if (traj.diverged) return true;
  const double limit = 10.0 * std::abs(step);
  for (double theta : traj.value) {
    if (std::abs(theta - theta_final) > limit) return true;
  }
  return false;
}

}  // namespace hybridleg
