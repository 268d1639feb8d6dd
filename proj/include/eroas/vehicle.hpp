#pragma once

#include "eroas/geometry.hpp"

namespace eroas {

// Reduced AUV kinematics: fixed pitch and roll, body-frame velocities,
// heading integrated from the yaw rate.
struct VehicleState {
  Vec3 position{0.0, 0.0, 0.0};
  double heading = 0.0;  // psi, wrapped to (-pi, pi]
  Vec3 velocity{0.0, 0.0, 0.0};  // body frame (v_x forward, v_y left, v_z up)
  double yaw_rate = 0.0;
  double time = 0.0;
};

struct VehicleLimits {
  double v_x_max = 1.0;   // forward speed in [0, v_x_max]
  double v_y_max = 1.0;
  double v_z_max = 1.0;
  double r_max = 15.0 * M_PI / 180.0;
};

// First-order surrogate for the low-level velocity controller.
// tau = 0 means ideal (instantaneous) tracking.
struct TrackingConfig {
  double tau = 0.0;
  double dt = 0.05;
  bool euler = false;  // explicit Euler instead of midpoint heading
};

double wrap_angle(double a);  // into (-pi, pi]

// Raw kinematic map over one dt with constant velocities: heading advances
// by r*dt and the translation uses the midpoint heading (or the initial
// heading when euler is set). No clipping, no lag.
VehicleState integrate(const VehicleState& state, const Vec3& body_velocity,
                       double yaw_rate, double dt, bool euler = false);

Vec3 clip_velocity(const Vec3& v, const VehicleLimits& limits);

// One integrator step: references clipped to limits, velocities relaxed
// toward the clipped references with time constant tau, then integrated.
VehicleState step(const VehicleState& state, const Vec3& v_ref, double r_ref,
                  const VehicleLimits& limits, const TrackingConfig& tracking);

bool goal_reached(const VehicleState& state, const Vec3& goal, double eps);

}  // namespace eroas
