#include "hybridleg/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hybridleg {

ComplianceSplit make_split(double k_total, double lambda_passive) {
  if (!std::isfinite(k_total) || k_total <= 0.0) {
    throw std::invalid_argument("total stiffness must be finite and > 0, got " +
                                std::to_string(k_total));
  }
  if (!std::isfinite(lambda_passive) || lambda_passive < 0.0 ||
      lambda_passive > 1.0) {
    throw std::invalid_argument("passive fraction must lie in [0, 1], got " +
                                std::to_string(lambda_passive));
  }
  return ComplianceSplit{k_total, lambda_passive};
}

double biological_delay(double mass_kg) {
  if (!std::isfinite(mass_kg) || mass_kg <= 0.0) {
    throw std::invalid_argument("mass must be finite and > 0, got " +
                                std::to_string(mass_kg));
  }
  return 0.031 * std::pow(mass_kg, 0.21);
}

double rotational_from_linear(double k_linear, double pulley_radius) {
  if (!std::isfinite(k_linear) || k_linear <= 0.0) {
    throw std::invalid_argument("linear stiffness must be > 0, got " +
                                std::to_string(k_linear));
  }
  if (!std::isfinite(pulley_radius) || pulley_radius <= 0.0) {
    throw std::invalid_argument("pulley radius must be > 0, got " +
                                std::to_string(pulley_radius));
  }
  return k_linear * pulley_radius * pulley_radius;
}

double LegGeometry::rest_hip_height() const {
  return hip_height(*this, rest_knee_angle);
}

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double hip_height(const LegGeometry& geom, double theta_knee) {
  if (!(theta_knee > 0.0) || !(theta_knee < kPi)) {
    throw std::domain_error("knee angle outside (0, pi): " +
                            std::to_string(theta_knee));
  }
  return 2.0 * geom.segment_length * std::cos(0.5 * theta_knee);
}

double hip_height_slope(const LegGeometry& geom, double theta_knee) {
  return -geom.segment_length * std::sin(0.5 * theta_knee);
}

double knee_from_height(const LegGeometry& geom, double height) {
  const double max = geom.max_hip_height();
  if (!(height > 0.0) || !(height < max)) {
    throw std::domain_error("hip height outside (0, 2L): " +
                            std::to_string(height));
  }
  return 2.0 * std::acos(height / max);
}

void validate(const LegGeometry& geom) {
  if (!(geom.segment_length > 0.0) || !(geom.knee_pulley_radius > 0.0)) {
    throw std::invalid_argument("leg segment and pulley must be > 0");
  }
  if (!(geom.rest_knee_angle > 0.0) || !(geom.rest_knee_angle < kPi)) {
    throw std::invalid_argument("rest knee angle must lie in (0, pi)");
  }
  if (geom.hip_constraint_gain != 0.5) {
    throw std::invalid_argument(
        "hip constraint gain is fixed at 1/2; other couplings would break "
        "the foot-under-hip kinematics");
  }
}

void validate(const BodyParams& body) {
  if (!(body.mass > 0.0)) throw std::invalid_argument("mass must be > 0");
  if (body.hip_damping < 0.0 || body.knee_damping < 0.0) {
    throw std::invalid_argument("joint damping must be >= 0");
  }
  if (!(body.gravity > 0.0)) throw std::invalid_argument("gravity must be > 0");
}

}  // namespace hybridleg
