#include "eroas/vehicle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eroas {

double wrap_angle(double a) {
  a = std::fmod(a + M_PI, 2.0 * M_PI);
  if (a <= 0.0) a += 2.0 * M_PI;
  return a - M_PI;
}

VehicleState integrate(const VehicleState& state, const Vec3& body_velocity,
                       double yaw_rate, double dt, bool euler) {
  VehicleState next = state;
  const double psi_mid =
      euler ? state.heading : state.heading + 0.5 * yaw_rate * dt;
  const double c = std::cos(psi_mid), s = std::sin(psi_mid);
  next.position.x() +=
      (body_velocity.x() * c - body_velocity.y() * s) * dt;
  next.position.y() +=
      (body_velocity.x() * s + body_velocity.y() * c) * dt;
  next.position.z() += body_velocity.z() * dt;
  next.heading = wrap_angle(state.heading + yaw_rate * dt);
  next.velocity = body_velocity;
  next.yaw_rate = yaw_rate;
  next.time = state.time + dt;
  return next;
}

Vec3 clip_velocity(const Vec3& v, const VehicleLimits& limits) {
  return {std::clamp(v.x(), 0.0, limits.v_x_max),
          std::clamp(v.y(), -limits.v_y_max, limits.v_y_max),
          std::clamp(v.z(), -limits.v_z_max, limits.v_z_max)};
}

VehicleState step(const VehicleState& state, const Vec3& v_ref, double r_ref,
                  const VehicleLimits& limits,
                  const TrackingConfig& tracking) {
  if (!(tracking.dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  const Vec3 v_cmd = clip_velocity(v_ref, limits);
  const double r_cmd = std::clamp(r_ref, -limits.r_max, limits.r_max);
  const double alpha =
      tracking.tau > 0.0 ? 1.0 - std::exp(-tracking.dt / tracking.tau) : 1.0;
  const Vec3 v = state.velocity + alpha * (v_cmd - state.velocity);
  const double r = state.yaw_rate + alpha * (r_cmd - state.yaw_rate);
  return integrate(state, v, r, tracking.dt, tracking.euler);
}

bool goal_reached(const VehicleState& state, const Vec3& goal, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
  return (state.position - goal).norm() <= eps;
}

}  // namespace eroas
